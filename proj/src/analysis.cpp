#include "clocklab/analysis.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "clocklab/causal.hpp"
#include "clocklab/chsh.hpp"
#include "clocklab/conventions.hpp"
#include "clocklab/errors.hpp"
#include "clocklab/syncproto.hpp"

namespace clocklab::analysis {

using nlohmann::json;

Ratio kappa_ratio_to_epsilon(const Ratio& kappa) {
  const double k = kappa.value();
  if (!(k > -1.0 && k < 1.0))
    throw validation_error("kappa outside (-1, 1): " + to_string(kappa));
  return Ratio{kappa.den - kappa.num, 2 * kappa.den};
}

namespace {

bool positions_available(const clocknet::Scenario& scenario) {
  if (scenario.nodes.size() < 2) return false;
  for (const clocknet::Node& n : scenario.nodes)
    if (!n.position_lns) return false;
  return true;
}

std::int64_t eps_shift(const Ratio& eps, std::int64_t rtt_ns) {
  return div_half_even((2 * eps.num - eps.den) * rtt_ns, 2 * eps.den);
}

} // namespace

SweepTable sweep_table(const clocknet::Scenario& scenario,
                       const std::vector<Ratio>& epsilons,
                       const std::vector<Ratio>& kappas,
                       const std::vector<double>& boosts) {
  if (scenario.syncs.empty() || scenario.syncs.front().repetitions < 2)
    throw config_error("sweep requires a sync schedule with >= 2 repetitions");
  if (epsilons.empty() && kappas.empty() && boosts.empty())
    throw config_error("sweep requires at least one convention grid");
  for (const Ratio& e : epsilons)
    if (e.den > 1000000)
      throw validation_error("epsilon denominator too fine: " + to_string(e));

  const clocknet::Trace trace = clocknet::run(scenario);
  const auto exchanges = syncproto::exchanges_from_trace(trace);
  if (exchanges.size() < 2)
    throw config_error("sweep requires at least two completed exchanges");
  const syncproto::SyncExchange x0 = exchanges[0];
  const syncproto::SyncExchange x1 = exchanges[1];

  const std::string& master = scenario.syncs.front().master;
  const std::string& slave = scenario.syncs.front().slave;
  const std::string& reference = scenario.nodes.front().id;
  const std::int64_t master_rtt =
      master == reference ? 0 : clocknet::link_rtt(scenario, master, reference);
  const std::int64_t slave_rtt =
      slave == reference ? 0 : clocknet::link_rtt(scenario, slave, reference);

  // all convention columns in one audit pass: eps rows first, then boosts,
  // with eps = 1/2 and v = 0 as the flip baselines
  std::vector<Ratio> audit_eps = {Ratio{1, 2}};
  for (const Ratio& e : epsilons) audit_eps.push_back(e);
  for (const Ratio& k : kappas) audit_eps.push_back(kappa_ratio_to_epsilon(k));
  std::vector<double> audit_boosts = {0.0};
  for (double v : boosts) audit_boosts.push_back(v);

  std::optional<causal::FitoAuditReport> audit;
  if (positions_available(scenario))
    audit = causal::fito_audit(scenario, trace, audit_eps, audit_boosts);

  auto flips_vs_baseline = [&](std::size_t column, std::size_t baseline) {
    std::size_t count = 0;
    for (const causal::AuditedPair& p : audit->pairs)
      if (p.klass == spacetime::IntervalClass::Spacelike &&
          p.per_convention.at(column) != p.per_convention.at(baseline))
        ++count;
    return count;
  };

  SweepTable table;
  auto eps_row = [&](const std::string& label, const Ratio& eps, std::size_t column) {
    const std::int64_t sm = eps_shift(eps, master_rtt);
    const std::int64_t ss = eps_shift(eps, slave_rtt);
    SweepRow row;
    row.label = label;
    row.rtt_ns = syncproto::round_trip_ns(x0); // invariant under per-node shifts
    row.owd_forward_ns = (x0.t2 + ss) - (x0.t1 + sm);
    row.owd_reverse_ns = (x0.t4 + sm) - (x0.t3 + ss);
    const std::int64_t owd1 = (x1.t2 + ss) - (x1.t1 + sm);
    row.pdv_ns = std::llabs(owd1 - row.owd_forward_ns);
    if (audit) row.flipped_pairs = flips_vs_baseline(column, 0);
    table.rows.push_back(row);
  };

  std::size_t column = 1; // 0 is the eps baseline
  for (const Ratio& e : epsilons) eps_row("eps=" + to_string(e), e, column++);
  for (const Ratio& k : kappas)
    eps_row("kappa=" + to_string(k), kappa_ratio_to_epsilon(k), column++);

  const std::size_t boost_base = audit_eps.size(); // column of v = 0
  for (std::size_t i = 0; i < boosts.size(); ++i) {
    SweepRow row;
    char buf[32];
    std::snprintf(buf, sizeof buf, "v=%g", boosts[i]);
    row.label = buf;
    row.rtt_ns = syncproto::round_trip_ns(x0);
    row.owd_forward_ns = x0.t2 - x0.t1;
    row.owd_reverse_ns = x0.t4 - x0.t3;
    row.pdv_ns = std::llabs((x1.t2 - x1.t1) - (x0.t2 - x0.t1));
    if (audit) row.flipped_pairs = flips_vs_baseline(boost_base + 1 + i, boost_base);
    table.rows.push_back(row);
  }

  table.single_clock_columns_constant = true;
  for (const SweepRow& row : table.rows)
    if (row.rtt_ns != table.rows.front().rtt_ns ||
        row.pdv_ns != table.rows.front().pdv_ns)
      table.single_clock_columns_constant = false;
  return table;
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "convention,rtt_ns,owd_forward_ns,owd_reverse_ns,pdv_ns,flipped_pairs\n";
  for (const SweepRow& row : table.rows) {
    out << row.label << ',' << row.rtt_ns << ',' << row.owd_forward_ns << ','
        << row.owd_reverse_ns << ',' << row.pdv_ns << ',';
    if (row.flipped_pairs) out << *row.flipped_pairs;
    out << '\n';
  }
  return out.str();
}

std::string smear_csv(const scenario_io::SmearSection& section) {
  civiltime::SmearSpec spec;
  spec.leap = civiltime::TaiInstant{section.leap_ns};
  spec.sign = section.sign;
  spec.window_ns = section.window_s * 1000000000LL;
  spec.window_end_offset_ns = section.end_offset_s * 1000000000LL;

  const std::int64_t w1 = section.leap_ns + spec.window_end_offset_ns;
  const std::int64_t w0 = w1 - spec.window_ns;
  const std::int64_t margin = spec.window_ns / 16;
  const std::int64_t lo = w0 - margin;
  const std::int64_t hi = w1 + margin;

  std::ostringstream out;
  out << "t_ns,smeared_ns,adjustment_ns\n";
  for (int i = 0; i <= section.samples; ++i) {
    const std::int64_t t =
        lo + static_cast<std::int64_t>((static_cast<__int128>(hi - lo) * i) /
                                       section.samples);
    const std::int64_t sm = civiltime::smear(t, spec);
    out << t << ',' << sm << ',' << (sm - t) << '\n';
  }
  return out.str();
}

std::string rates_json(const scenario_io::RatesSection& section) {
  conventions::RelativisticRates r;
  if (section.preset_gps) {
    r = conventions::gps_rates();
  } else {
    r = conventions::relativistic_rate(section.orbital_speed, section.phi_delta,
                                       conventions::gps::kSpeedOfLight);
  }
  json doc;
  doc["velocity_term"] = r.velocity_term;
  doc["gravity_term"] = r.gravity_term;
  doc["velocity_us_per_day"] = r.velocity_term * 86400.0 * 1e6;
  doc["gravity_us_per_day"] = r.gravity_term * 86400.0 * 1e6;
  doc["net_us_per_day"] = r.net_per_day_us;
  doc["preset"] = section.preset_gps ? "gps" : "custom";
  return doc.dump(2) + "\n";
}

std::string chsh_json(const scenario_io::ChshSection& section) {
  const auto search = chsh::tsirelson_search(section.coarse, section.fine);
  json doc;
  doc["lhv_max"] = chsh::lhv_max();
  doc["quantum_max"] = search.max_value;
  doc["angles_rad"] = search.angles;
  doc["evaluations"] = search.evaluations;
  return doc.dump(2) + "\n";
}

std::string dst_json(const scenario_io::DstSection& section) {
  json probes = json::array();
  for (const civiltime::UtcCivil& probe : section.probes) {
    json row;
    row["wall"] = civiltime::format_civil(probe);
    try {
      const civiltime::DstResult r = civiltime::apply_dst(probe, section.rule);
      switch (r.status) {
        case civiltime::DstStatus::Standard: row["status"] = "standard"; break;
        case civiltime::DstStatus::Dst: row["status"] = "dst"; break;
        case civiltime::DstStatus::Ambiguous: row["status"] = "ambiguous"; break;
      }
      row["utc_offset_s"] = r.utc_offset_s;
      row["adjusted"] = civiltime::format_civil(r.adjusted);
      if (r.alternate_offset_s) row["alternate_offset_s"] = *r.alternate_offset_s;
    } catch (const civiltime::dst_gap_error& e) {
      row["status"] = "gap";
      row["error"] = e.what();
    }
    probes.push_back(row);
  }
  json doc;
  doc["base_offset_s"] = section.rule.base_offset_s;
  doc["dst_offset_s"] = section.rule.dst_offset_s;
  doc["start"] = civiltime::format_civil(section.rule.start);
  doc["end"] = civiltime::format_civil(section.rule.end);
  doc["probes"] = probes;
  return doc.dump(2) + "\n";
}

} // namespace clocklab::analysis
