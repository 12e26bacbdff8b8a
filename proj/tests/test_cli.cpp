// End-to-end checks of the clocklab binary against the bundled scenarios.

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string bin() {
  const char* b = std::getenv("CLOCKLAB_BIN");
  REQUIRE(b != nullptr);
  return b;
}

std::string root() {
  const char* r = std::getenv("CLOCKLAB_ROOT");
  REQUIRE(r != nullptr);
  return r;
}

std::string scenario(const std::string& name) {
  return root() + "/scenarios/" + name + ".scn";
}

int run_cli(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = bin() + " " + args;
  if (!stdout_file.empty())
    cmd += " > " + stdout_file + " 2>&1";
  else
    cmd += " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json slurp_json(const fs::path& path) { return json::parse(slurp(path)); }

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("clocklab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("ptp-asymmetry: every offset estimate is half the delay difference") {
  const fs::path out = fresh_dir("ptp");
  REQUIRE(run_cli("simulate --scenario " + scenario("ptp-asymmetry") +
                  " --out " + out.string()) == 0);
  std::istringstream sync(slurp(out / "sync.csv"));
  std::string line;
  std::getline(sync, line);
  CHECK(line == "t1,t2,t3,t4,offset,delay");
  int rows = 0;
  while (std::getline(sync, line)) {
    long long t1, t2, t3, t4, offset, delay;
    char c;
    std::istringstream row(line);
    row >> t1 >> c >> t2 >> c >> t3 >> c >> t4 >> c >> offset >> c >> delay;
    CHECK(offset == 500); // (1500 - 500) / 2
    CHECK(delay == 1000);
    ++rows;
  }
  CHECK(rows == 10);
}

TEST_CASE("forbidden-zone: violations appear and are predicted") {
  const fs::path out = fresh_dir("fz");
  REQUIRE(run_cli("simulate --scenario " + scenario("forbidden-zone") +
                  " --out " + out.string()) == 0);
  const json report = slurp_json(out / "forbidden_zone.json");
  CHECK(report["violating_samples"].get<int>() > 0);
  CHECK(report["predicted_violation"].get<bool>());
  CHECK(report["min_margin_ns"].get<long long>() == -1000);
  CHECK(report["min_margin_us"].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("fito-flip: the spacelike pair flips, timelike pairs hold") {
  const fs::path out = fresh_dir("fito");
  REQUIRE(run_cli("simulate --scenario " + scenario("fito-flip") + " --out " +
                  out.string()) == 0);
  const json audit = slurp_json(out / "audit.json");
  CHECK(audit["spacelike_pairs"].get<int>() >= 1);
  CHECK(audit["flipped_pairs"].get<int>() >= 1);
  CHECK(audit["timelike_violations"].get<int>() == 0);
}

TEST_CASE("leap-smear: curve ends exactly one second short") {
  const fs::path out = fresh_dir("smear");
  REQUIRE(run_cli("simulate --scenario " + scenario("leap-smear") + " --out " +
                  out.string()) == 0);
  std::istringstream csv(slurp(out / "smear.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t_ns,smeared_ns,adjustment_ns");
  long long last_adj = 1;
  long long min_adj = 1;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    long long t, sm, adj;
    char c;
    row >> t >> c >> sm >> c >> adj;
    last_adj = adj;
    min_adj = std::min(min_adj, adj);
  }
  CHECK(last_adj == -1000000000);
  CHECK(min_adj == -1000000000);
}

TEST_CASE("gps-rates: the preset report lands on the quoted figures") {
  const fs::path out = fresh_dir("rates");
  REQUIRE(run_cli("simulate --scenario " + scenario("gps-rates") + " --out " +
                  out.string()) == 0);
  const json rates = slurp_json(out / "rates.json");
  CHECK(rates["velocity_us_per_day"].get<double>() == doctest::Approx(-7.2).epsilon(0.05));
  CHECK(rates["gravity_us_per_day"].get<double>() == doctest::Approx(45.7).epsilon(0.02));
  CHECK(rates["net_us_per_day"].get<double>() == doctest::Approx(38.5).epsilon(0.03));
}

TEST_CASE("chsh scenario and subcommand agree") {
  const fs::path out = fresh_dir("chsh");
  REQUIRE(run_cli("simulate --scenario " + scenario("chsh") + " --out " +
                  out.string()) == 0);
  const json report = slurp_json(out / "chsh.json");
  CHECK(report["lhv_max"].get<double>() == 2.0);
  CHECK(report["quantum_max"].get<double>() ==
        doctest::Approx(2.8284271247461903).epsilon(1e-4));

  const fs::path stdout_file = out / "stdout.json";
  REQUIRE(run_cli("chsh --coarse 36 --fine 360", stdout_file.string()) == 0);
  const json direct = slurp_json(stdout_file);
  CHECK(direct["lhv_max"].get<double>() == 2.0);
  CHECK(direct["quantum_max"].get<double>() ==
        doctest::Approx(2.8284271247461903).epsilon(1e-4));
}

TEST_CASE("convert renders the leap second and round-trips") {
  const std::string table = root() + "/data/leap-seconds.csv";
  const fs::path out = fresh_dir("convert");

  const fs::path to_utc = out / "to_utc.txt";
  REQUIRE(run_cli("convert --time 1972-07-01T00:00:10 --from tai --to utc"
                  " --leap-table " + table, to_utc.string()) == 0);
  CHECK(slurp(to_utc) == "1972-06-30T23:59:60 utc\n");

  const fs::path to_tai = out / "to_tai.txt";
  REQUIRE(run_cli("convert --time 1972-06-30T23:59:60 --from utc --to tai"
                  " --leap-table " + table, to_tai.string()) == 0);
  CHECK(slurp(to_tai) == "1972-07-01T00:00:10 tai\n");

  const fs::path echo = out / "echo.txt";
  REQUIRE(run_cli("convert --time 2000-01-01T00:00:00.5 --from utc --to utc"
                  " --leap-table " + table, echo.string()) == 0);
  CHECK(slurp(echo) == "2000-01-01T00:00:00.500000000 utc\n");

  // uncovered epoch: before the first table entry
  CHECK(run_cli("convert --time 1960-01-01T00:00:00 --from utc --to tai"
                " --leap-table " + table) == 1);
}

TEST_CASE("utc->tai->utc round trip through the binary") {
  const std::string table = root() + "/data/leap-seconds.csv";
  const fs::path out = fresh_dir("roundtrip");
  for (int i = 0; i < 20; ++i) {
    const std::string t = "19" + std::to_string(80 + i % 20) + "-03-0" +
                          std::to_string(1 + i % 9) + "T12:34:5" +
                          std::to_string(i % 10);
    const fs::path fwd = out / "fwd.txt";
    REQUIRE(run_cli("convert --time " + t + " --from utc --to tai --leap-table " +
                    table, fwd.string()) == 0);
    std::string tai_text = slurp(fwd);
    tai_text = tai_text.substr(0, tai_text.find(' '));
    const fs::path back = out / "back.txt";
    REQUIRE(run_cli("convert --time " + tai_text +
                    " --from tai --to utc --leap-table " + table,
                    back.string()) == 0);
    CHECK(slurp(back) == t + " utc\n");
  }
}

TEST_CASE("sweep emits a table with constant single-clock columns") {
  const fs::path out = fresh_dir("sweep");
  REQUIRE(run_cli("sweep --scenario " + scenario("ptp-asymmetry") + " --out " +
                  out.string() + " --epsilon-grid 0.1,0.3,0.5,0.7,0.9"
                  " --boost-grid 0.9,-0.9") == 0);
  std::istringstream csv(slurp(out / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "convention,rtt_ns,owd_forward_ns,owd_reverse_ns,pdv_ns,flipped_pairs");
  int rows = 0;
  long long rtt0 = -1;
  while (std::getline(csv, line)) {
    const auto first_comma = line.find(',');
    const auto second_comma = line.find(',', first_comma + 1);
    const long long rtt = std::stoll(line.substr(first_comma + 1,
                                                 second_comma - first_comma - 1));
    if (rtt0 < 0) rtt0 = rtt;
    CHECK(rtt == rtt0);
    ++rows;
  }
  CHECK(rows == 7);
  CHECK(rtt0 == 2000);
}

TEST_CASE("byte-determinism of simulate outputs") {
  const fs::path out1 = fresh_dir("det1");
  const fs::path out2 = fresh_dir("det2");
  const std::string args = "simulate --scenario " + scenario("fito-flip") +
                           " --seed 9 --out ";
  REQUIRE(run_cli(args + out1.string()) == 0);
  REQUIRE(run_cli(args + out2.string()) == 0);
  for (const char* file : {"trace.csv", "trace.json", "audit.json",
                           "forbidden_zone.json", "owd.csv"}) {
    CHECK(slurp(out1 / file) == slurp(out2 / file));
  }
}

TEST_CASE("empty traffic yields empty trace files and exit 0") {
  const fs::path out = fresh_dir("empty");
  const fs::path scn = out / "empty.scn";
  std::ofstream(scn) << "[node]\nid = A\n\n[node]\nid = B\n\n"
                        "[link]\na = A\nb = B\ndelay_ab_ns = 10\ndelay_ba_ns = 10\n";
  REQUIRE(run_cli("simulate --scenario " + scn.string() + " --out " +
                  out.string()) == 0);
  CHECK(slurp(out / "trace.csv") == "kind,node,msg_id,true_time_ns,displayed_ns\n");
  const json trace = slurp_json(out / "trace.json");
  CHECK(trace.is_array());
  CHECK(trace.empty());
}

TEST_CASE("malformed scenarios exit 1 with a diagnostic") {
  const fs::path out = fresh_dir("bad");
  const fs::path bad_key = out / "bad_key.scn";
  std::ofstream(bad_key) << "[node]\nid = A\nofset_ns = 1\n";
  const fs::path err = out / "err.txt";
  CHECK(run_cli("simulate --scenario " + bad_key.string() + " --out " +
                out.string() + "/o1", err.string()) == 1);
  const std::string diagnostic = slurp(err);
  CHECK(diagnostic.find("line 3") != std::string::npos);

  const fs::path dangling = out / "dangling.scn";
  std::ofstream(dangling) << "[node]\nid = A\n\n[message]\nat_ns = 0\n"
                             "from = A\nto = GHOST\n";
  CHECK(run_cli("simulate --scenario " + dangling.string() + " --out " +
                out.string() + "/o2") == 1);

  CHECK(run_cli("simulate --scenario /nonexistent.scn --out " + out.string() +
                "/o3") == 1);
}
