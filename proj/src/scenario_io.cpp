#include "clocklab/scenario_io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "clocklab/errors.hpp"

namespace clocklab::scenario_io {

std::vector<Ratio> default_epsilon_grid() {
  std::vector<Ratio> grid;
  for (std::int64_t k = 1; k <= 19; ++k) grid.push_back(Ratio{k, 20});
  return grid;
}

std::vector<double> default_boost_grid() { return {-0.9, -0.5, 0.0, 0.5, 0.9}; }

namespace {

struct KeyValue {
  std::string key;
  std::string value;
  int line;
  int column;
};

struct Section {
  std::string name;
  int line;
  std::vector<KeyValue> pairs;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Section> tokenize(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw parse_error("unterminated section header", lineno, 1);
      sections.push_back(Section{trim(line.substr(1, line.size() - 2)), lineno, {}});
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw parse_error("expected key = value", lineno, 1);
    if (sections.empty())
      throw parse_error("key outside any section", lineno, 1);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw parse_error("empty key", lineno, 1);
    if (value.empty()) throw parse_error("empty value for key " + key, lineno, 1);
    const int column = static_cast<int>(raw.find(key[0])) + 1;
    sections.back().pairs.push_back(KeyValue{key, value, lineno, column});
  }
  return sections;
}

std::int64_t parse_int(const KeyValue& kv) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(kv.value, &pos);
    if (pos != kv.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw parse_error("integer expected for " + kv.key, kv.line, kv.column);
  }
}

double parse_double(const KeyValue& kv) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(kv.value, &pos);
    if (pos != kv.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw parse_error("number expected for " + kv.key, kv.line, kv.column);
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::istringstream in(value);
  std::string item;
  while (in >> item) items.push_back(item);
  return items;
}

// Dispatch table per section; unknown keys fail with position info.
void apply_keys(const Section& s,
                const std::map<std::string, std::function<void(const KeyValue&)>>& handlers) {
  for (const KeyValue& kv : s.pairs) {
    auto it = handlers.find(kv.key);
    if (it == handlers.end())
      throw parse_error("unknown key '" + kv.key + "' in [" + s.name + "]",
                        kv.line, kv.column);
    it->second(kv);
  }
}

civiltime::UtcCivil parse_civil_kv(const KeyValue& kv) {
  try {
    return civiltime::parse_civil(kv.value);
  } catch (const std::exception&) {
    throw parse_error("civil datetime expected for " + kv.key, kv.line, kv.column);
  }
}

} // namespace

ScenarioFile parse_scenario(const std::string& text) {
  ScenarioFile file;
  int auto_msg = 0;
  for (const Section& s : tokenize(text)) {
    if (s.name == "meta") {
      apply_keys(s, {{"seed", [&](const KeyValue& kv) {
                        file.sim.seed = static_cast<std::uint64_t>(parse_int(kv));
                      }}});
    } else if (s.name == "node") {
      clocknet::Node n;
      apply_keys(s, {
        {"id", [&](const KeyValue& kv) { n.id = kv.value; }},
        {"position_lns", [&](const KeyValue& kv) { n.position_lns = parse_int(kv); }},
        {"offset_ns", [&](const KeyValue& kv) { n.clock.offset_ns = parse_int(kv); }},
        {"rate_ppb", [&](const KeyValue& kv) { n.clock.rate_ppb = parse_int(kv); }},
        {"noise_stddev_ns",
         [&](const KeyValue& kv) { n.clock.noise_stddev_ns = parse_int(kv); }},
      });
      if (n.id.empty()) throw parse_error("[node] requires id", s.line, 1);
      file.sim.nodes.push_back(std::move(n));
    } else if (s.name == "link") {
      clocknet::Link l;
      apply_keys(s, {
        {"a", [&](const KeyValue& kv) { l.a = kv.value; }},
        {"b", [&](const KeyValue& kv) { l.b = kv.value; }},
        {"delay_ab_ns", [&](const KeyValue& kv) { l.delay_ab_ns = parse_int(kv); }},
        {"delay_ba_ns", [&](const KeyValue& kv) { l.delay_ba_ns = parse_int(kv); }},
        {"jitter_stddev_ns",
         [&](const KeyValue& kv) { l.jitter_stddev_ns = parse_int(kv); }},
      });
      if (l.a.empty() || l.b.empty())
        throw parse_error("[link] requires a and b", s.line, 1);
      file.sim.links.push_back(std::move(l));
    } else if (s.name == "message") {
      clocknet::Message m;
      apply_keys(s, {
        {"at_ns", [&](const KeyValue& kv) { m.at_ns = parse_int(kv); }},
        {"from", [&](const KeyValue& kv) { m.from = kv.value; }},
        {"to", [&](const KeyValue& kv) { m.to = kv.value; }},
        {"id", [&](const KeyValue& kv) { m.msg_id = kv.value; }},
      });
      if (m.msg_id.empty()) m.msg_id = "m" + std::to_string(auto_msg++);
      file.sim.messages.push_back(std::move(m));
    } else if (s.name == "tick") {
      clocknet::Tick t;
      apply_keys(s, {
        {"at_ns", [&](const KeyValue& kv) { t.at_ns = parse_int(kv); }},
        {"node", [&](const KeyValue& kv) { t.node = kv.value; }},
        {"label", [&](const KeyValue& kv) { t.msg_id = kv.value; }},
      });
      file.sim.ticks.push_back(std::move(t));
    } else if (s.name == "sync") {
      clocknet::SyncSchedule y;
      apply_keys(s, {
        {"at_ns", [&](const KeyValue& kv) { y.at_ns = parse_int(kv); }},
        {"master", [&](const KeyValue& kv) { y.master = kv.value; }},
        {"slave", [&](const KeyValue& kv) { y.slave = kv.value; }},
        {"repetitions",
         [&](const KeyValue& kv) { y.repetitions = static_cast<int>(parse_int(kv)); }},
        {"gap_ns", [&](const KeyValue& kv) { y.gap_ns = parse_int(kv); }},
        {"residence_ns", [&](const KeyValue& kv) { y.residence_ns = parse_int(kv); }},
      });
      file.sim.syncs.push_back(std::move(y));
    } else if (s.name == "conventions") {
      apply_keys(s, {
        {"epsilons",
         [&](const KeyValue& kv) {
           if (kv.value == "default") {
             file.sim.epsilons = default_epsilon_grid();
             return;
           }
           for (const std::string& item : split_list(kv.value)) {
             try {
               file.sim.epsilons.push_back(parse_ratio(item));
             } catch (const std::exception&) {
               throw parse_error("bad epsilon '" + item + "'", kv.line, kv.column);
             }
           }
         }},
        {"boosts",
         [&](const KeyValue& kv) {
           if (kv.value == "default") {
             file.sim.boosts = default_boost_grid();
             return;
           }
           for (const std::string& item : split_list(kv.value)) {
             KeyValue sub = kv;
             sub.value = item;
             file.sim.boosts.push_back(parse_double(sub));
           }
         }},
      });
    } else if (s.name == "smear") {
      SmearSection sm;
      apply_keys(s, {
        {"leap_ns", [&](const KeyValue& kv) { sm.leap_ns = parse_int(kv); }},
        {"sign", [&](const KeyValue& kv) {
           sm.sign = static_cast<int>(parse_int(kv));
           if (sm.sign != 1 && sm.sign != -1)
             throw parse_error("sign must be 1 or -1", kv.line, kv.column);
         }},
        {"window_s", [&](const KeyValue& kv) { sm.window_s = parse_int(kv); }},
        {"end_offset_s", [&](const KeyValue& kv) { sm.end_offset_s = parse_int(kv); }},
        {"samples", [&](const KeyValue& kv) {
           sm.samples = static_cast<int>(parse_int(kv));
           if (sm.samples < 2)
             throw parse_error("samples must be at least 2", kv.line, kv.column);
         }},
      });
      file.smear = sm;
    } else if (s.name == "rates") {
      RatesSection r;
      apply_keys(s, {
        {"preset", [&](const KeyValue& kv) {
           if (kv.value != "gps")
             throw parse_error("unknown preset '" + kv.value + "'", kv.line, kv.column);
           r.preset_gps = true;
         }},
        {"orbital_speed", [&](const KeyValue& kv) {
           r.orbital_speed = parse_double(kv);
           r.preset_gps = false;
         }},
        {"phi_delta", [&](const KeyValue& kv) {
           r.phi_delta = parse_double(kv);
           r.preset_gps = false;
         }},
      });
      file.rates = r;
    } else if (s.name == "chsh") {
      ChshSection c;
      apply_keys(s, {
        {"coarse", [&](const KeyValue& kv) { c.coarse = static_cast<int>(parse_int(kv)); }},
        {"fine", [&](const KeyValue& kv) { c.fine = static_cast<int>(parse_int(kv)); }},
      });
      file.chsh = c;
    } else if (s.name == "dst") {
      DstSection d;
      apply_keys(s, {
        {"base_offset_s",
         [&](const KeyValue& kv) { d.rule.base_offset_s = parse_int(kv); }},
        {"dst_offset_s",
         [&](const KeyValue& kv) { d.rule.dst_offset_s = parse_int(kv); }},
        {"start", [&](const KeyValue& kv) { d.rule.start = parse_civil_kv(kv); }},
        {"end", [&](const KeyValue& kv) { d.rule.end = parse_civil_kv(kv); }},
        {"probe", [&](const KeyValue& kv) { d.probes.push_back(parse_civil_kv(kv)); }},
      });
      file.dst = d;
    } else {
      throw parse_error("unknown section [" + s.name + "]", s.line, 1);
    }
  }
  return file;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open scenario: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

} // namespace clocklab::scenario_io
