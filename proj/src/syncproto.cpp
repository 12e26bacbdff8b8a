#include "clocklab/syncproto.hpp"

#include <map>

#include "clocklab/errors.hpp"

namespace clocklab::syncproto {

SyncEstimate ptp_estimate(const SyncExchange& x) {
  if (x.t3 < x.t2) throw validation_error("slave reply before receive (t3 < t2)");
  if (x.t4 < x.t1) throw validation_error("negative master round trip (t4 < t1)");
  const std::int64_t forward = x.t2 - x.t1;
  const std::int64_t reverse = x.t4 - x.t3;
  return SyncEstimate{halve_half_even(forward - reverse),
                      halve_half_even(forward + reverse)};
}

std::int64_t round_trip_ns(const SyncExchange& x) {
  return (x.t4 - x.t1) - (x.t3 - x.t2);
}

SyncExchange reassign_slave(const SyncExchange& x, const Ratio& eps,
                            std::int64_t rtt_ns) {
  // (eps - 1/2) * rtt = (2*num - den) * rtt / (2*den)
  const std::int64_t shift =
      div_half_even((2 * eps.num - eps.den) * rtt_ns, 2 * eps.den);
  SyncExchange out = x;
  out.t2 += shift;
  out.t3 += shift;
  return out;
}

std::vector<SyncExchange> exchanges_from_trace(const clocknet::Trace& trace) {
  // keyed by the "syncI.R" prefix; schedule order == prefix order within a run
  std::map<std::string, SyncExchange> partial;
  std::vector<std::string> order;
  for (const clocknet::TraceEvent& ev : trace) {
    if (ev.msg_id.rfind("sync", 0) != 0) continue;
    const std::size_t dot = ev.msg_id.find_last_of('.');
    const std::string base = ev.msg_id.substr(0, dot);
    const bool is_req = ev.msg_id.compare(dot, std::string::npos, ".req") == 0;
    if (!partial.count(base)) order.push_back(base);
    SyncExchange& x = partial[base];
    if (is_req && ev.kind == clocknet::EventKind::Send) x.t1 = ev.displayed_ns;
    if (is_req && ev.kind == clocknet::EventKind::Receive) x.t2 = ev.displayed_ns;
    if (!is_req && ev.kind == clocknet::EventKind::Send) x.t3 = ev.displayed_ns;
    if (!is_req && ev.kind == clocknet::EventKind::Receive) x.t4 = ev.displayed_ns;
  }
  std::vector<SyncExchange> out;
  out.reserve(order.size());
  for (const std::string& base : order) out.push_back(partial.at(base));
  return out;
}

std::vector<SyncEstimate> run_sync(const clocknet::Scenario& scenario,
                                   const std::string& master,
                                   const std::string& slave, int repetitions) {
  if (repetitions < 1) throw validation_error("repetitions below 1");
  clocknet::Scenario s = scenario;
  s.messages.clear();
  s.ticks.clear();
  s.syncs = {clocknet::SyncSchedule{0, master, slave, repetitions, 1000000, 0}};
  const clocknet::Trace trace = clocknet::run(s);
  std::vector<SyncEstimate> estimates;
  for (const SyncExchange& x : exchanges_from_trace(trace))
    estimates.push_back(ptp_estimate(x));
  return estimates;
}

clocknet::ClockModel apply_correction(const clocknet::ClockModel& clock,
                                      const SyncEstimate& estimate) {
  clocknet::ClockModel adjusted = clock;
  adjusted.offset_ns -= estimate.offset_ns;
  return adjusted;
}

} // namespace clocklab::syncproto
