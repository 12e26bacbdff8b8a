// clocklab command-line front end: scenario runs, convention sweeps,
// civil-time conversions, and the desk-scale reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clocklab/analysis.hpp"
#include "clocklab/causal.hpp"
#include "clocklab/civiltime.hpp"
#include "clocklab/errors.hpp"
#include "clocklab/metrics.hpp"
#include "clocklab/reports.hpp"
#include "clocklab/scenario_io.hpp"
#include "clocklab/syncproto.hpp"

namespace fs = std::filesystem;
using namespace clocklab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct RunManifest {
  std::string scenario_path;
  std::string out_dir;
  std::vector<std::string> analyses = {"sync", "audit", "metrics"};
  std::vector<std::string> epsilon_grid;
  std::vector<std::string> kappa_grid;
  std::vector<std::string> boost_grid;
  std::int64_t seed = -1; // <0 means "use the scenario's seed"
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write " + path.string());
  out << content;
}

bool enabled(const RunManifest& m, const std::string& analysis) {
  for (const std::string& a : m.analyses)
    if (a == analysis) return true;
  return false;
}

scenario_io::ScenarioFile load_manifest_scenario(RunManifest& manifest) {
  if (!fs::exists(manifest.scenario_path))
    throw config_error("scenario does not exist: " + manifest.scenario_path);
  scenario_io::ScenarioFile file = scenario_io::load_scenario(manifest.scenario_path);
  if (manifest.seed >= 0)
    file.sim.seed = static_cast<std::uint64_t>(manifest.seed);
  fs::create_directories(manifest.out_dir);
  return file;
}

bool positions_available(const clocknet::Scenario& s) {
  if (s.nodes.size() < 2) return false;
  for (const clocknet::Node& n : s.nodes)
    if (!n.position_lns) return false;
  return true;
}

int cmd_simulate(RunManifest& manifest) {
  for (const std::string& a : manifest.analyses)
    if (a != "sync" && a != "audit" && a != "metrics")
      throw validation_error("unknown analysis: " + a);
  scenario_io::ScenarioFile file = load_manifest_scenario(manifest);
  const fs::path out = manifest.out_dir;

  if (!file.sim.nodes.empty()) {
    const clocknet::Trace trace = clocknet::run(file.sim);
    write_file(out / "trace.csv", reports::trace_csv(trace));
    write_file(out / "trace.json", reports::trace_json(trace));

    if (enabled(manifest, "sync") && !file.sim.syncs.empty()) {
      const auto exchanges = syncproto::exchanges_from_trace(trace);
      std::vector<syncproto::SyncEstimate> estimates;
      for (const auto& x : exchanges) estimates.push_back(syncproto::ptp_estimate(x));
      write_file(out / "sync.csv", reports::sync_csv(exchanges, estimates));
    }
    if (enabled(manifest, "audit") && !file.sim.epsilons.empty() &&
        positions_available(file.sim)) {
      const auto audit =
          causal::fito_audit(file.sim, trace, file.sim.epsilons, file.sim.boosts);
      write_file(out / "audit.json", reports::audit_json(audit));
    }
    if (enabled(manifest, "metrics")) {
      write_file(out / "forbidden_zone.json",
                 reports::forbidden_zone_json(metrics::forbidden_zone(file.sim, trace)));
      write_file(out / "owd.csv", reports::owd_csv(metrics::delay_samples(trace)));
    }
  }

  if (file.smear) write_file(out / "smear.csv", analysis::smear_csv(*file.smear));
  if (file.rates) write_file(out / "rates.json", analysis::rates_json(*file.rates));
  if (file.chsh) write_file(out / "chsh.json", analysis::chsh_json(*file.chsh));
  if (file.dst) write_file(out / "dst.json", analysis::dst_json(*file.dst));
  return kExitOk;
}

int cmd_sweep(RunManifest& manifest) {
  scenario_io::ScenarioFile file = load_manifest_scenario(manifest);

  std::vector<Ratio> epsilons;
  for (const std::string& s : manifest.epsilon_grid) epsilons.push_back(parse_ratio(s));
  if (epsilons.empty()) epsilons = file.sim.epsilons;
  if (epsilons.empty() && manifest.kappa_grid.empty())
    epsilons = scenario_io::default_epsilon_grid();
  for (const Ratio& e : epsilons)
    if (!(e.value() > 0.0 && e.value() < 1.0))
      throw validation_error("epsilon outside (0, 1): " + to_string(e));

  std::vector<Ratio> kappas;
  for (const std::string& s : manifest.kappa_grid) kappas.push_back(parse_ratio(s));

  std::vector<double> boosts;
  for (const std::string& s : manifest.boost_grid) boosts.push_back(std::stod(s));
  if (boosts.empty()) boosts = file.sim.boosts;
  for (double v : boosts)
    if (!(v > -1.0 && v < 1.0))
      throw validation_error("boost velocity outside (-1, 1)");

  const analysis::SweepTable table =
      analysis::sweep_table(file.sim, epsilons, kappas, boosts);
  write_file(fs::path(manifest.out_dir) / "sweep.csv", analysis::sweep_csv(table));

  std::cout << "rows: " << table.rows.size() << "\n"
            << "single_clock_columns_constant: "
            << (table.single_clock_columns_constant ? "true" : "false") << "\n";
  if (!table.single_clock_columns_constant)
    throw validation_error("single-clock observable varied across conventions");
  return kExitOk;
}

int cmd_convert(const std::string& time_text, const std::string& from,
                const std::string& to, const std::string& table_path) {
  const civiltime::LeapTable table = civiltime::LeapTable::load_csv(table_path);
  const civiltime::UtcCivil input = civiltime::parse_civil(time_text);

  const auto tai_of = [&](const civiltime::UtcCivil& c) {
    if (c.second == 60)
      throw validation_error("second=60 is not a TAI reading");
    const std::int64_t day = civiltime::day_number(c.year, c.month, c.day);
    const std::int64_t sod = c.hour * 3600LL + c.minute * 60LL + c.second;
    return civiltime::TaiInstant{(day * 86400 + sod) * 1000000000LL + c.nanosecond};
  };
  const auto civil_of_tai = [&](const civiltime::TaiInstant& t) {
    civiltime::UtcCivil c;
    const std::int64_t s = t.ns_since_epoch / 1000000000LL;
    civiltime::civil_from_day_number(s / 86400, c.year, c.month, c.day);
    const std::int64_t sod = s % 86400;
    c.hour = static_cast<int>(sod / 3600);
    c.minute = static_cast<int>((sod % 3600) / 60);
    c.second = static_cast<int>(sod % 60);
    c.nanosecond = t.ns_since_epoch % 1000000000LL;
    return c;
  };

  civiltime::UtcCivil result;
  if (from == to) {
    result = input;
  } else if (from == "utc" && to == "tai") {
    result = civil_of_tai(civiltime::utc_to_tai(input, table));
  } else if (from == "tai" && to == "utc") {
    result = civiltime::tai_to_utc(tai_of(input), table);
  } else {
    throw validation_error("unsupported scale pair " + from + "->" + to);
  }
  std::cout << civiltime::format_civil(result) << " " << to << "\n";
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic clock-convention simulator and analyzer"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::string time_text, scale_from, scale_to, leap_table;
  int chsh_coarse = 90, chsh_fine = 360;
  double rate_v = -1.0, rate_phi = 0.0;
  bool rate_custom = false;

  CLI::App* simulate = app.add_subcommand("simulate", "run a scenario and write reports");
  simulate->add_option("--scenario", manifest.scenario_path, "scenario file")->required();
  simulate->add_option("--out", manifest.out_dir, "output directory")->required();
  simulate->add_option("--seed", manifest.seed, "seed override");
  simulate->add_option("--analyses", manifest.analyses,
                       "subset of {sync, audit, metrics}");

  CLI::App* sweep = app.add_subcommand("sweep", "re-evaluate observables per convention");
  sweep->add_option("--scenario", manifest.scenario_path, "scenario file")->required();
  sweep->add_option("--out", manifest.out_dir, "output directory")->required();
  sweep->add_option("--seed", manifest.seed, "seed override");
  sweep->add_option("--epsilon-grid", manifest.epsilon_grid, "epsilon values")
      ->delimiter(',');
  sweep->add_option("--kappa-grid", manifest.kappa_grid, "kappa values")
      ->delimiter(',');
  sweep->add_option("--boost-grid", manifest.boost_grid, "frame velocities")
      ->delimiter(',');

  CLI::App* convert = app.add_subcommand("convert", "convert between TAI and UTC");
  convert->add_option("--time", time_text, "civil time string")->required();
  convert->add_option("--from", scale_from, "tai or utc")->required();
  convert->add_option("--to", scale_to, "tai or utc")->required();
  convert->add_option("--leap-table", leap_table, "leap table CSV")->required();

  CLI::App* chsh_cmd = app.add_subcommand("chsh", "CHSH bound and singlet optimum");
  chsh_cmd->add_option("--coarse", chsh_coarse, "coarse grid points per angle");
  chsh_cmd->add_option("--fine", chsh_fine, "fine grid points per angle");

  CLI::App* rates = app.add_subcommand("rates", "relativistic clock-rate report");
  rates->add_option("--orbital-speed", rate_v, "orbital speed in m/s");
  rates->add_option("--phi-delta", rate_phi, "potential difference in m^2/s^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(manifest);
    if (sweep->parsed()) return cmd_sweep(manifest);
    if (convert->parsed())
      return cmd_convert(time_text, scale_from, scale_to, leap_table);
    if (chsh_cmd->parsed()) {
      scenario_io::ChshSection section{chsh_coarse, chsh_fine};
      std::cout << analysis::chsh_json(section);
      return kExitOk;
    }
    if (rates->parsed()) {
      rate_custom = rates->count("--orbital-speed") > 0 || rates->count("--phi-delta") > 0;
      scenario_io::RatesSection section;
      if (rate_custom) {
        section.preset_gps = false;
        section.orbital_speed = rate_v < 0 ? 0.0 : rate_v;
        section.phi_delta = rate_phi;
      }
      std::cout << analysis::rates_json(section);
      return kExitOk;
    }
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
