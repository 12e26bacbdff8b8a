#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clocklab/clocknet.hpp"

namespace clocklab::metrics {

/// One delivered message with both displayed and true timestamps. The true
/// times always satisfy recv > send; the displayed values carry no such
/// constraint, and negative displayed differences are data, not errors.
struct DelaySample {
  std::string sender;
  std::string receiver;
  std::string msg_id;
  std::int64_t send_displayed_ns = 0;
  std::int64_t recv_displayed_ns = 0;
  std::int64_t send_true_ns = 0;
  std::int64_t recv_true_ns = 0;
};

/// All matched send/receive pairs of a trace, in receive order.
std::vector<DelaySample> delay_samples(const clocknet::Trace& trace);

/// recv_displayed - send_displayed; may be negative.
std::int64_t one_way_delay(const DelaySample& s);

/// |owd(a) - owd(b)| for two samples over the same sender/receiver pair.
/// Throws validation_error on mismatched endpoints.
std::int64_t pdv(const DelaySample& a, const DelaySample& b);

/// Single-clock round trip of a request/reply pair, measured entirely on
/// the original sender's clock. Throws on an unmatched pair.
std::int64_t rtt(const DelaySample& request, const DelaySample& reply);

struct DirectionStats {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::int64_t min_margin_ns = 0;
};

struct ForbiddenZoneReport {
  std::size_t total_samples = 0;
  std::size_t violating_samples = 0; // recv_displayed < send_displayed
  std::int64_t min_margin_ns = 0;    // most negative displayed difference
  bool predicted_violation = false;  // from ground-truth skew vs delay
  std::map<std::string, DirectionStats> per_direction; // "from->to"
};

/// Counts receive-before-send samples and predicts them from the scenario's
/// ground truth: a direction violates under zero noise iff the receiver's
/// offset is below the sender's by more than the one-way delay.
ForbiddenZoneReport forbidden_zone(const clocknet::Scenario& scenario,
                                   const clocknet::Trace& trace);

} // namespace clocklab::metrics
