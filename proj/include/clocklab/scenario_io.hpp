#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clocklab/civiltime.hpp"
#include "clocklab/clocknet.hpp"

namespace clocklab::scenario_io {

/// [smear] section: sample a linear leap smear around its window.
struct SmearSection {
  std::int64_t leap_ns = 0;
  int sign = +1;
  std::int64_t window_s = 86400;
  std::int64_t end_offset_s = 0;
  int samples = 96;
};

/// [rates] section: relativistic clock-rate report (defaults to the GPS preset).
struct RatesSection {
  bool preset_gps = true;
  double orbital_speed = 0.0;
  double phi_delta = 0.0;
};

/// [chsh] section: local-bound and singlet grid search.
struct ChshSection {
  int coarse = 90;
  int fine = 360;
};

/// [dst] section: a rule plus wall-clock labels to resolve against it.
struct DstSection {
  civiltime::DstRule rule;
  std::vector<civiltime::UtcCivil> probes;
};

/// One parsed scenario file: the simulation core plus optional analyses.
struct ScenarioFile {
  clocknet::Scenario sim;
  std::optional<SmearSection> smear;
  std::optional<RatesSection> rates;
  std::optional<ChshSection> chsh;
  std::optional<DstSection> dst;
};

/// Default convention grids used when a section says "default".
std::vector<Ratio> default_epsilon_grid(); // 0.05, 0.10, ..., 0.95
std::vector<double> default_boost_grid();  // -0.9, -0.5, 0, 0.5, 0.9

/// Parses the sectioned key-value scenario grammar. Unknown sections or
/// keys raise parse_error with line/column; values are checked strictly.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

} // namespace clocklab::scenario_io
