#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clocklab/clocknet.hpp"
#include "clocklab/ratio.hpp"
#include "clocklab/spacetime.hpp"

namespace clocklab::causal {

struct LamportClock {
  std::uint64_t counter = 0;
};

/// Local event: counter + 1. Receive: max(own, incoming) + 1.
LamportClock lamport_step(const LamportClock& own,
                          const std::optional<LamportClock>& incoming);

struct VectorClock {
  std::map<std::string, std::uint64_t> components;
};

enum class CausalOrder { Before, After, Equal, Concurrent };

const char* to_string(CausalOrder o);

/// Componentwise max with incoming (when present), then increment self_id.
/// Throws validation_error when self_id is not a component of own.
VectorClock vector_step(const VectorClock& own, const std::string& self_id,
                        const std::optional<VectorClock>& incoming);

CausalOrder compare(const VectorClock& a, const VectorClock& b);

/// Happens-before over a trace: program order plus send->receive edges,
/// with the exact reflexive-free transitive closure.
class HappensBeforeGraph {
 public:
  std::size_t event_count() const { return adjacency_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }
  /// True iff event a happens-before event b (a != b required for true).
  bool reaches(std::size_t a, std::size_t b) const;

  friend HappensBeforeGraph happens_before(const clocknet::Trace& trace);

 private:
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::uint64_t>> adjacency_; // closure bitsets
};

/// Builds the graph from a clocknet trace. Sends must pair with receives;
/// an unmatched receive is a validation error.
HappensBeforeGraph happens_before(const clocknet::Trace& trace);

/// Lamport and vector clock values for every trace event, in trace order.
struct LogicalAnnotations {
  std::vector<std::uint64_t> lamport;
  std::vector<VectorClock> vector;
};

LogicalAnnotations annotate(const clocknet::Trace& trace);

/// Displayed-timestamp order of one event pair under one convention.
using PairOrder = spacetime::Ordering;

struct AuditedPair {
  std::size_t first_event = 0;
  std::size_t second_event = 0;
  spacetime::IntervalClass klass = spacetime::IntervalClass::Spacelike;
  std::vector<PairOrder> per_convention; // epsilons first, then boosts
  bool flipped = false;
};

struct FitoAuditReport {
  std::size_t spacelike_pairs = 0;
  std::size_t flipped_pairs = 0;       // spacelike pairs whose order varies
  std::size_t timelike_violations = 0; // timelike pairs whose order varies
  std::vector<std::string> convention_labels;
  std::vector<AuditedPair> pairs;      // every cross-node pair
};

/// Classifies every cross-node event pair by light time, re-orders it under
/// each epsilon (slave-timeline shift by (eps - 1/2) * RTT to the reference
/// node, the scenario's first node) and each boost (Lorentz transform of the
/// true coordinates), and counts ordering flips.
/// Requires node positions; throws config_error otherwise.
FitoAuditReport fito_audit(const clocknet::Scenario& scenario,
                           const clocknet::Trace& trace,
                           const std::vector<Ratio>& epsilons,
                           const std::vector<double>& boosts = {});

} // namespace clocklab::causal
