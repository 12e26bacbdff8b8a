#pragma once

#include <string>
#include <vector>

#include "clocklab/causal.hpp"
#include "clocklab/clocknet.hpp"
#include "clocklab/metrics.hpp"
#include "clocklab/syncproto.hpp"

namespace clocklab::reports {

/// CSV with header "kind,node,msg_id,true_time_ns,displayed_ns".
std::string trace_csv(const clocknet::Trace& trace);

/// JSON array equivalent of the trace CSV.
std::string trace_json(const clocknet::Trace& trace);

/// CSV with header "t1,t2,t3,t4,offset,delay".
std::string sync_csv(const std::vector<syncproto::SyncExchange>& exchanges,
                     const std::vector<syncproto::SyncEstimate>& estimates);

/// Audit counts plus the per-pair table (pair id, class, per-convention order).
std::string audit_json(const causal::FitoAuditReport& report);

/// Counts, margins (ns and microseconds), and the per-direction breakdown.
std::string forbidden_zone_json(const metrics::ForbiddenZoneReport& report);

/// CSV of per-sample one-way delays for external plotting.
std::string owd_csv(const std::vector<metrics::DelaySample>& samples);

} // namespace clocklab::reports
