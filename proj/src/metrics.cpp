#include "clocklab/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "clocklab/errors.hpp"

namespace clocklab::metrics {

std::vector<DelaySample> delay_samples(const clocknet::Trace& trace) {
  std::map<std::string, const clocknet::TraceEvent*> sends;
  std::vector<DelaySample> out;
  for (const clocknet::TraceEvent& ev : trace) {
    if (ev.kind == clocknet::EventKind::Send) {
      sends[ev.msg_id] = &ev;
    } else if (ev.kind == clocknet::EventKind::Receive) {
      auto it = sends.find(ev.msg_id);
      if (it == sends.end())
        throw validation_error("receive without matching send: " + ev.msg_id);
      const clocknet::TraceEvent& s = *it->second;
      out.push_back(DelaySample{s.node, ev.node, ev.msg_id, s.displayed_ns,
                                ev.displayed_ns, s.true_time_ns, ev.true_time_ns});
    }
  }
  return out;
}

std::int64_t one_way_delay(const DelaySample& s) {
  return s.recv_displayed_ns - s.send_displayed_ns;
}

std::int64_t pdv(const DelaySample& a, const DelaySample& b) {
  if (a.sender != b.sender || a.receiver != b.receiver)
    throw validation_error("PDV samples cross different endpoints");
  return std::llabs(one_way_delay(a) - one_way_delay(b));
}

std::int64_t rtt(const DelaySample& request, const DelaySample& reply) {
  if (request.sender != reply.receiver || request.receiver != reply.sender)
    throw validation_error("request/reply endpoints do not match");
  if (reply.send_true_ns < request.recv_true_ns)
    throw validation_error("reply sent before request arrived");
  return reply.recv_displayed_ns - request.send_displayed_ns;
}

ForbiddenZoneReport forbidden_zone(const clocknet::Scenario& scenario,
                                   const clocknet::Trace& trace) {
  ForbiddenZoneReport report;
  report.min_margin_ns = std::numeric_limits<std::int64_t>::max();
  std::map<std::string, std::pair<std::string, std::string>> directions;

  for (const DelaySample& s : delay_samples(trace)) {
    const std::int64_t margin = one_way_delay(s);
    ++report.total_samples;
    if (margin < 0) ++report.violating_samples;
    report.min_margin_ns = std::min(report.min_margin_ns, margin);

    const std::string key = s.sender + "->" + s.receiver;
    directions.emplace(key, std::make_pair(s.sender, s.receiver));
    DirectionStats& dir = report.per_direction[key];
    if (dir.samples == 0) dir.min_margin_ns = margin;
    ++dir.samples;
    if (margin < 0) ++dir.violations;
    dir.min_margin_ns = std::min(dir.min_margin_ns, margin);
  }
  if (report.total_samples == 0) report.min_margin_ns = 0;

  // ground-truth prediction over the directions that carry traffic:
  // under zero noise, a direction violates iff the receiver's clock sits
  // further behind the sender's than the one-way delay
  for (const auto& [key, endpoints] : directions) {
    const auto& [sender, receiver] = endpoints;
    const std::int64_t skew =
        clocknet::node_by_id(scenario, receiver).clock.offset_ns -
        clocknet::node_by_id(scenario, sender).clock.offset_ns;
    if (skew < -clocknet::link_delay(scenario, sender, receiver))
      report.predicted_violation = true;
  }
  return report;
}

} // namespace clocklab::metrics
