#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clocklab/ratio.hpp"
#include "clocklab/scenario_io.hpp"

namespace clocklab::analysis {

/// One row of a convention sweep. Single-clock observables (rtt, pdv) must
/// come out identical on every row; one-way delays are allowed to move.
struct SweepRow {
  std::string label;
  std::int64_t rtt_ns = 0;
  std::int64_t owd_forward_ns = 0;
  std::int64_t owd_reverse_ns = 0;
  std::int64_t pdv_ns = 0;
  std::optional<std::size_t> flipped_pairs; // absent without positions
};

struct SweepTable {
  std::vector<SweepRow> rows;
  bool single_clock_columns_constant = false;
};

/// Re-evaluates the scenario's first sync exchange under every grid value.
/// Epsilon and kappa rows resynchronize displayed timelines against the
/// reference node; boost rows re-order true coordinates. Requires a sync
/// schedule with at least two repetitions.
SweepTable sweep_table(const clocknet::Scenario& scenario,
                       const std::vector<Ratio>& epsilons,
                       const std::vector<Ratio>& kappas,
                       const std::vector<double>& boosts);

/// CSV with header "convention,rtt_ns,owd_forward_ns,owd_reverse_ns,pdv_ns,flipped_pairs".
std::string sweep_csv(const SweepTable& table);

/// Sampled smear curve: "t_ns,smeared_ns,adjustment_ns" across the window.
std::string smear_csv(const scenario_io::SmearSection& section);

std::string rates_json(const scenario_io::RatesSection& section);

std::string chsh_json(const scenario_io::ChshSection& section);

std::string dst_json(const scenario_io::DstSection& section);

/// kappa -> epsilon on exact rationals: eps = (den - num) / (2 den).
Ratio kappa_ratio_to_epsilon(const Ratio& kappa);

} // namespace clocklab::analysis
