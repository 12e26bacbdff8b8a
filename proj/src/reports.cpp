#include "clocklab/reports.hpp"

#include <sstream>

#include <json.hpp>

namespace clocklab::reports {

using nlohmann::json;

std::string trace_csv(const clocknet::Trace& trace) {
  std::ostringstream out;
  out << "kind,node,msg_id,true_time_ns,displayed_ns\n";
  for (const clocknet::TraceEvent& ev : trace)
    out << to_string(ev.kind) << ',' << ev.node << ',' << ev.msg_id << ','
        << ev.true_time_ns << ',' << ev.displayed_ns << '\n';
  return out.str();
}

std::string trace_json(const clocknet::Trace& trace) {
  json rows = json::array();
  for (const clocknet::TraceEvent& ev : trace)
    rows.push_back({{"kind", to_string(ev.kind)},
                    {"node", ev.node},
                    {"msg_id", ev.msg_id},
                    {"true_time_ns", ev.true_time_ns},
                    {"displayed_ns", ev.displayed_ns}});
  return rows.dump(2) + "\n";
}

std::string sync_csv(const std::vector<syncproto::SyncExchange>& exchanges,
                     const std::vector<syncproto::SyncEstimate>& estimates) {
  std::ostringstream out;
  out << "t1,t2,t3,t4,offset,delay\n";
  for (std::size_t i = 0; i < exchanges.size(); ++i) {
    const syncproto::SyncExchange& x = exchanges[i];
    const syncproto::SyncEstimate& e = estimates.at(i);
    out << x.t1 << ',' << x.t2 << ',' << x.t3 << ',' << x.t4 << ','
        << e.offset_ns << ',' << e.delay_ns << '\n';
  }
  return out.str();
}

std::string audit_json(const causal::FitoAuditReport& report) {
  json doc;
  doc["spacelike_pairs"] = report.spacelike_pairs;
  doc["flipped_pairs"] = report.flipped_pairs;
  doc["timelike_violations"] = report.timelike_violations;
  doc["conventions"] = report.convention_labels;
  json pairs = json::array();
  for (const causal::AuditedPair& p : report.pairs) {
    json orders = json::array();
    for (causal::PairOrder o : p.per_convention)
      orders.push_back(spacetime::to_string(o));
    pairs.push_back({{"pair", "e" + std::to_string(p.first_event) + "-e" +
                                  std::to_string(p.second_event)},
                     {"class", spacetime::to_string(p.klass)},
                     {"orders", orders},
                     {"flipped", p.flipped}});
  }
  doc["pairs"] = pairs;
  return doc.dump(2) + "\n";
}

std::string forbidden_zone_json(const metrics::ForbiddenZoneReport& report) {
  json doc;
  doc["total_samples"] = report.total_samples;
  doc["violating_samples"] = report.violating_samples;
  doc["min_margin_ns"] = report.min_margin_ns;
  doc["min_margin_us"] = static_cast<double>(report.min_margin_ns) / 1000.0;
  doc["predicted_violation"] = report.predicted_violation;
  json dirs = json::object();
  for (const auto& [name, stats] : report.per_direction)
    dirs[name] = {{"samples", stats.samples},
                  {"violations", stats.violations},
                  {"min_margin_ns", stats.min_margin_ns},
                  {"min_margin_us", static_cast<double>(stats.min_margin_ns) / 1000.0}};
  doc["per_direction"] = dirs;
  return doc.dump(2) + "\n";
}

std::string owd_csv(const std::vector<metrics::DelaySample>& samples) {
  std::ostringstream out;
  out << "msg_id,sender,receiver,send_displayed_ns,recv_displayed_ns,owd_ns\n";
  for (const metrics::DelaySample& s : samples)
    out << s.msg_id << ',' << s.sender << ',' << s.receiver << ','
        << s.send_displayed_ns << ',' << s.recv_displayed_ns << ','
        << metrics::one_way_delay(s) << '\n';
  return out.str();
}

} // namespace clocklab::reports
