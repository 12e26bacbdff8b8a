#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clocklab/ratio.hpp"
#include "clocklab/rng.hpp"

namespace clocklab::clocknet {

/// Affine map from true coordinate time to a node's displayed timestamps.
/// displayed = t + offset_ns + round(rate_ppb * t / 1e9) + gaussian noise.
struct ClockModel {
  std::int64_t offset_ns = 0;
  std::int64_t rate_ppb = 0;
  std::int64_t noise_stddev_ns = 0;
};

struct Node {
  std::string id;
  std::optional<std::int64_t> position_lns; // light-nanoseconds along a line
  ClockModel clock;
};

/// Point-to-point channel. Delays are directional: a->b and b->a.
struct Link {
  std::string a;
  std::string b;
  std::int64_t delay_ab_ns = 1;
  std::int64_t delay_ba_ns = 1;
  std::int64_t jitter_stddev_ns = 0;
};

/// One-shot message emission at a true coordinate time.
struct Message {
  std::int64_t at_ns = 0;
  std::string from;
  std::string to;
  std::string msg_id;
};

/// Local event with no communication (advances logical clocks only).
struct Tick {
  std::int64_t at_ns = 0;
  std::string node;
  std::string msg_id; // label in the trace; may be empty
};

/// A batch of four-timestamp master/slave exchanges.
struct SyncSchedule {
  std::int64_t at_ns = 0;
  std::string master;
  std::string slave;
  int repetitions = 1;
  std::int64_t gap_ns = 1000000;     // true-time spacing between exchanges
  std::int64_t residence_ns = 0;     // true-time slave turnaround per exchange
};

enum class EventKind { LocalTick, Receive, Send };

const char* to_string(EventKind k);

/// One trace row: the true coordinate time plus the node's displayed reading.
struct TraceEvent {
  EventKind kind = EventKind::LocalTick;
  std::string node;
  std::int64_t true_time_ns = 0;
  std::int64_t displayed_ns = 0;
  std::string msg_id; // empty for plain local ticks
};

using Trace = std::vector<TraceEvent>;

/// Declarative description of one simulated network run.
struct Scenario {
  std::vector<Node> nodes;
  std::vector<Link> links;
  std::vector<Message> messages;
  std::vector<Tick> ticks;
  std::vector<SyncSchedule> syncs;
  std::vector<Ratio> epsilons;  // conventions evaluated by audits/sweeps
  std::vector<double> boosts;
  std::uint64_t seed = 0;
};

/// Displayed reading of a clock at a true time; deterministic and affine
/// when noise_stddev_ns is 0. Throws on representation overflow.
std::int64_t read_clock(const ClockModel& clock, std::int64_t true_time_ns,
                        NoiseStream& noise);

/// Checks ids, references, delay bounds, and light-time consistency.
/// Throws config_error / validation_error on the first problem found.
void validate(const Scenario& scenario);

/// Runs the scenario to completion. The trace is totally ordered by
/// (true_time_ns, node, msg_id, kind) and is a pure function of the scenario.
Trace run(const Scenario& scenario);

const Node& node_by_id(const Scenario& scenario, const std::string& id);

/// Directional delay of the link joining `from` and `to` (no jitter).
std::int64_t link_delay(const Scenario& scenario, const std::string& from,
                        const std::string& to);

/// Round trip delay of the direct link between the two nodes.
std::int64_t link_rtt(const Scenario& scenario, const std::string& a,
                      const std::string& b);

} // namespace clocklab::clocknet
