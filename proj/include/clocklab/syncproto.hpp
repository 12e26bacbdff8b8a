#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clocklab/clocknet.hpp"
#include "clocklab/ratio.hpp"

namespace clocklab::syncproto {

/// Four-timestamp master/slave exchange: t1 master send (master clock),
/// t2 slave receive, t3 slave send (slave clock), t4 master receive.
struct SyncExchange {
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::int64_t t3 = 0;
  std::int64_t t4 = 0;
};

struct SyncEstimate {
  std::int64_t offset_ns = 0; // estimated slave - master offset
  std::int64_t delay_ns = 0;  // estimated one-way path delay
};

/// offset = ((t2-t1) - (t4-t3)) / 2, delay = ((t2-t1) + (t4-t3)) / 2,
/// halving with round-half-toward-even. Throws validation_error when
/// t3 < t2 or t4 < t1.
SyncEstimate ptp_estimate(const SyncExchange& x);

/// Single-clock round trip (t4-t1) - (t3-t2); an observable, independent of
/// the slave clock entirely.
std::int64_t round_trip_ns(const SyncExchange& x);

/// The same exchange with the slave timeline resynchronized under eps:
/// t2 and t3 shift by round((eps - 1/2) * rtt_ns), exact when it divides.
SyncExchange reassign_slave(const SyncExchange& x, const Ratio& eps,
                            std::int64_t rtt_ns);

/// Runs `repetitions` four-timestamp exchanges between master and slave on
/// the simulated network and estimates each one.
std::vector<SyncEstimate> run_sync(const clocknet::Scenario& scenario,
                                   const std::string& master,
                                   const std::string& slave, int repetitions);

/// Exchanges extracted from an already-simulated trace, in schedule order.
std::vector<SyncExchange> exchanges_from_trace(const clocknet::Trace& trace);

/// Slews the clock by the estimated offset; rate untouched. Not idempotent:
/// applying the same estimate twice subtracts it twice.
clocknet::ClockModel apply_correction(const clocknet::ClockModel& clock,
                                      const SyncEstimate& estimate);

} // namespace clocklab::syncproto
