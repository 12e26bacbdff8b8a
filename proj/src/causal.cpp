#include "clocklab/causal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "clocklab/errors.hpp"

namespace clocklab::causal {

LamportClock lamport_step(const LamportClock& own,
                          const std::optional<LamportClock>& incoming) {
  const std::uint64_t base =
      incoming ? std::max(own.counter, incoming->counter) : own.counter;
  return LamportClock{base + 1};
}

const char* to_string(CausalOrder o) {
  switch (o) {
    case CausalOrder::Before: return "Before";
    case CausalOrder::After: return "After";
    case CausalOrder::Equal: return "Equal";
    case CausalOrder::Concurrent: return "Concurrent";
  }
  return "Unknown";
}

VectorClock vector_step(const VectorClock& own, const std::string& self_id,
                        const std::optional<VectorClock>& incoming) {
  if (!own.components.count(self_id))
    throw validation_error("unknown self id: " + self_id);
  VectorClock next = own;
  if (incoming) {
    for (const auto& [id, value] : incoming->components) {
      auto& slot = next.components[id];
      slot = std::max(slot, value);
    }
  }
  next.components[self_id] += 1;
  return next;
}

CausalOrder compare(const VectorClock& a, const VectorClock& b) {
  bool a_less = false;
  bool b_less = false;
  auto scan = [](const VectorClock& x, const VectorClock& y, bool& strictly_less) {
    for (const auto& [id, value] : x.components) {
      auto it = y.components.find(id);
      const std::uint64_t other = it == y.components.end() ? 0 : it->second;
      if (value > other) strictly_less = true;
    }
  };
  scan(b, a, a_less); // some component of b exceeds a => a < b there
  scan(a, b, b_less);
  if (!a_less && !b_less) return CausalOrder::Equal;
  if (a_less && !b_less) return CausalOrder::Before;
  if (b_less && !a_less) return CausalOrder::After;
  return CausalOrder::Concurrent;
}

bool HappensBeforeGraph::reaches(std::size_t a, std::size_t b) const {
  if (a >= adjacency_.size() || b >= adjacency_.size())
    throw validation_error("event index out of range");
  return (adjacency_[a][b / 64] >> (b % 64)) & 1u;
}

HappensBeforeGraph happens_before(const clocknet::Trace& trace) {
  const std::size_t n = trace.size();
  HappensBeforeGraph g;
  std::map<std::string, std::size_t> last_on_node;
  std::map<std::string, std::size_t> send_of;
  for (std::size_t i = 0; i < n; ++i) {
    const clocknet::TraceEvent& ev = trace[i];
    auto prev = last_on_node.find(ev.node);
    if (prev != last_on_node.end()) g.edges_.push_back({prev->second, i});
    last_on_node[ev.node] = i;
    if (ev.kind == clocknet::EventKind::Send) {
      send_of[ev.msg_id] = i;
    } else if (ev.kind == clocknet::EventKind::Receive) {
      auto s = send_of.find(ev.msg_id);
      if (s == send_of.end())
        throw validation_error("receive without matching send: " + ev.msg_id);
      g.edges_.push_back({s->second, i});
    }
  }

  const std::size_t words = (n + 63) / 64;
  g.adjacency_.assign(n, std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<std::size_t>> succ(n);
  for (auto [a, b] : g.edges_) succ[a].push_back(b);
  // trace order is topological: every edge goes forward in time
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t next : succ[i]) {
      g.adjacency_[i][next / 64] |= 1ULL << (next % 64);
      for (std::size_t w = 0; w < words; ++w)
        g.adjacency_[i][w] |= g.adjacency_[next][w];
    }
  }
  return g;
}

LogicalAnnotations annotate(const clocknet::Trace& trace) {
  std::map<std::string, LamportClock> lamport_now;
  std::map<std::string, VectorClock> vector_now;
  std::map<std::string, std::size_t> send_event;

  // all nodes appearing in the trace own a vector component
  VectorClock zero;
  for (const clocknet::TraceEvent& ev : trace) zero.components[ev.node] = 0;

  LogicalAnnotations out;
  out.lamport.resize(trace.size());
  out.vector.resize(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const clocknet::TraceEvent& ev = trace[i];
    if (!lamport_now.count(ev.node)) {
      lamport_now[ev.node] = LamportClock{};
      vector_now[ev.node] = zero;
    }
    std::optional<LamportClock> lamport_in;
    std::optional<VectorClock> vector_in;
    if (ev.kind == clocknet::EventKind::Receive) {
      auto s = send_event.find(ev.msg_id);
      if (s == send_event.end())
        throw validation_error("receive without matching send: " + ev.msg_id);
      lamport_in = LamportClock{out.lamport[s->second]};
      vector_in = out.vector[s->second];
    }
    lamport_now[ev.node] = lamport_step(lamport_now[ev.node], lamport_in);
    vector_now[ev.node] = vector_step(vector_now[ev.node], ev.node, vector_in);
    out.lamport[i] = lamport_now[ev.node].counter;
    out.vector[i] = vector_now[ev.node];
    if (ev.kind == clocknet::EventKind::Send) send_event[ev.msg_id] = i;
  }
  return out;
}

namespace {

PairOrder order_of_diff(std::int64_t diff) {
  if (diff == 0) return PairOrder::Simultaneous;
  return diff > 0 ? PairOrder::Before : PairOrder::After;
}

PairOrder boosted_order(std::int64_t dt_ns, std::int64_t dx_lns, double v) {
  const spacetime::Delta d{static_cast<double>(dt_ns), static_cast<double>(dx_lns)};
  const spacetime::Delta b = spacetime::boost(d, v);
  if (std::abs(b.dt) < 1e-12) return PairOrder::Simultaneous;
  return b.dt > 0.0 ? PairOrder::Before : PairOrder::After;
}

} // namespace

FitoAuditReport fito_audit(const clocknet::Scenario& scenario,
                           const clocknet::Trace& trace,
                           const std::vector<Ratio>& epsilons,
                           const std::vector<double>& boosts) {
  if (epsilons.empty()) throw config_error("audit requires at least one epsilon");
  if (scenario.nodes.empty()) throw config_error("audit requires nodes");
  for (const Ratio& e : epsilons)
    if (e.den > 1000000)
      throw validation_error("epsilon denominator too fine: " + to_string(e));
  for (const clocknet::Node& n : scenario.nodes)
    if (!n.position_lns)
      throw config_error("audit requires a position for node " + n.id);

  const std::string& reference = scenario.nodes.front().id;

  // per-node displayed-timeline shift, exact rational rounded half-to-even
  std::map<std::string, std::vector<std::int64_t>> shift_of;
  for (const clocknet::Node& n : scenario.nodes) {
    std::vector<std::int64_t> shifts;
    shifts.reserve(epsilons.size());
    const std::int64_t rtt =
        n.id == reference ? 0 : clocknet::link_rtt(scenario, n.id, reference);
    for (const Ratio& eps : epsilons)
      shifts.push_back(n.id == reference
                           ? 0
                           : div_half_even((2 * eps.num - eps.den) * rtt,
                                           2 * eps.den));
    shift_of.emplace(n.id, std::move(shifts));
  }

  FitoAuditReport report;
  for (const Ratio& eps : epsilons)
    report.convention_labels.push_back("eps=" + to_string(eps));
  for (double v : boosts) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "v=%g", v);
    report.convention_labels.push_back(buf);
  }

  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (std::size_t j = i + 1; j < trace.size(); ++j) {
      const clocknet::TraceEvent& a = trace[i];
      const clocknet::TraceEvent& b = trace[j];
      if (a.node == b.node) continue;

      const std::int64_t pos_a = *clocknet::node_by_id(scenario, a.node).position_lns;
      const std::int64_t pos_b = *clocknet::node_by_id(scenario, b.node).position_lns;
      const std::int64_t dt = b.true_time_ns - a.true_time_ns;
      const std::int64_t dx = pos_b - pos_a;

      AuditedPair pair;
      pair.first_event = i;
      pair.second_event = j;
      const std::int64_t abs_dt = std::llabs(dt);
      const std::int64_t abs_dx = std::llabs(dx);
      pair.klass = abs_dt > abs_dx   ? spacetime::IntervalClass::Timelike
                   : abs_dt < abs_dx ? spacetime::IntervalClass::Spacelike
                                     : spacetime::IntervalClass::Lightlike;

      for (std::size_t k = 0; k < epsilons.size(); ++k) {
        const std::int64_t da = a.displayed_ns + shift_of.at(a.node)[k];
        const std::int64_t db = b.displayed_ns + shift_of.at(b.node)[k];
        pair.per_convention.push_back(order_of_diff(db - da));
      }
      for (double v : boosts)
        pair.per_convention.push_back(boosted_order(dt, dx, v));

      pair.flipped = std::adjacent_find(pair.per_convention.begin(),
                                        pair.per_convention.end(),
                                        std::not_equal_to<>()) !=
                     pair.per_convention.end();

      if (pair.klass == spacetime::IntervalClass::Spacelike) {
        ++report.spacelike_pairs;
        if (pair.flipped) ++report.flipped_pairs;
      } else if (pair.klass == spacetime::IntervalClass::Timelike && pair.flipped) {
        ++report.timelike_violations;
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

} // namespace clocklab::causal
