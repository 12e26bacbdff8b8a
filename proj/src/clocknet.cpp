#include "clocklab/clocknet.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "clocklab/errors.hpp"

namespace clocklab::clocknet {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::LocalTick: return "LocalTick";
    case EventKind::Receive: return "Receive";
    case EventKind::Send: return "Send";
  }
  return "Unknown";
}

std::int64_t read_clock(const ClockModel& clock, std::int64_t true_time_ns,
                        NoiseStream& noise) {
  if (true_time_ns < 0) throw validation_error("negative true time");
  const __int128 rate_num = static_cast<__int128>(clock.rate_ppb) * true_time_ns;
  // round half away from zero
  const __int128 half = 500000000;
  const __int128 drift =
      rate_num >= 0 ? (rate_num + half) / 1000000000 : (rate_num - half) / 1000000000;
  __int128 displayed = static_cast<__int128>(true_time_ns) + clock.offset_ns + drift;
  if (clock.noise_stddev_ns > 0) {
    const double z = noise.next_gauss();
    displayed += static_cast<std::int64_t>(
        std::llround(z * static_cast<double>(clock.noise_stddev_ns)));
  }
  if (displayed > std::numeric_limits<std::int64_t>::max() ||
      displayed < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("clock reading exceeds 64-bit range");
  return static_cast<std::int64_t>(displayed);
}

const Node& node_by_id(const Scenario& scenario, const std::string& id) {
  for (const Node& n : scenario.nodes)
    if (n.id == id) return n;
  throw config_error("unknown node id: " + id);
}

static const Link& link_between(const Scenario& scenario, const std::string& x,
                                const std::string& y) {
  for (const Link& l : scenario.links)
    if ((l.a == x && l.b == y) || (l.a == y && l.b == x)) return l;
  throw config_error("no link between " + x + " and " + y);
}

std::int64_t link_delay(const Scenario& scenario, const std::string& from,
                        const std::string& to) {
  const Link& l = link_between(scenario, from, to);
  return l.a == from ? l.delay_ab_ns : l.delay_ba_ns;
}

std::int64_t link_rtt(const Scenario& scenario, const std::string& a,
                      const std::string& b) {
  const Link& l = link_between(scenario, a, b);
  return l.delay_ab_ns + l.delay_ba_ns;
}

void validate(const Scenario& scenario) {
  std::set<std::string> ids;
  for (const Node& n : scenario.nodes) {
    if (n.id.empty()) throw validation_error("empty node id");
    for (char c : n.id)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
        throw validation_error("node id contains illegal character: " + n.id);
    if (!ids.insert(n.id).second)
      throw validation_error("duplicate node id: " + n.id);
    if (n.clock.noise_stddev_ns < 0)
      throw validation_error("negative noise stddev on node " + n.id);
    if (n.clock.rate_ppb <= -1000000000)
      throw validation_error("clock rate at or below -1e9 ppb on node " + n.id);
  }
  for (const Link& l : scenario.links) {
    if (!ids.count(l.a) || !ids.count(l.b))
      throw config_error("link references unknown node: " + l.a + "-" + l.b);
    if (l.a == l.b) throw validation_error("link endpoints identical: " + l.a);
    if (l.delay_ab_ns < 1 || l.delay_ba_ns < 1)
      throw validation_error("link delay below 1 ns: " + l.a + "-" + l.b);
    if (l.jitter_stddev_ns < 0)
      throw validation_error("negative jitter stddev: " + l.a + "-" + l.b);
    const Node& na = node_by_id(scenario, l.a);
    const Node& nb = node_by_id(scenario, l.b);
    if (na.position_lns && nb.position_lns) {
      const std::int64_t light = std::llabs(*na.position_lns - *nb.position_lns);
      if (l.delay_ab_ns < light || l.delay_ba_ns < light)
        throw validation_error("link faster than light between " + l.a + " and " + l.b);
    }
  }
  std::set<std::string> msg_ids;
  for (const Message& m : scenario.messages) {
    if (!ids.count(m.from) || !ids.count(m.to))
      throw config_error("message references unknown node: " + m.msg_id);
    if (m.at_ns < 0) throw validation_error("negative message time: " + m.msg_id);
    if (m.msg_id.empty() || m.msg_id.rfind("sync", 0) == 0)
      throw validation_error("message id empty or reserved: " + m.msg_id);
    if (!msg_ids.insert(m.msg_id).second)
      throw validation_error("duplicate message id: " + m.msg_id);
    link_between(scenario, m.from, m.to);
  }
  for (const Tick& t : scenario.ticks) {
    if (!ids.count(t.node)) throw config_error("tick references unknown node");
    if (t.at_ns < 0) throw validation_error("negative tick time");
  }
  for (const SyncSchedule& s : scenario.syncs) {
    if (!ids.count(s.master) || !ids.count(s.slave))
      throw config_error("sync references unknown node");
    if (s.master == s.slave) throw validation_error("sync master equals slave");
    if (s.repetitions < 1) throw validation_error("sync repetitions below 1");
    if (s.at_ns < 0 || s.gap_ns < 1 || s.residence_ns < 0)
      throw validation_error("sync schedule with non-positive spacing");
    link_between(scenario, s.master, s.slave);
  }
  for (const Ratio& e : scenario.epsilons) {
    const double v = e.value();
    if (!(v > 0.0 && v < 1.0))
      throw validation_error("epsilon outside (0, 1): " + to_string(e));
  }
  for (double v : scenario.boosts)
    if (!(std::abs(v) < 1.0)) throw validation_error("boost velocity outside (-1, 1)");
}

namespace {

struct PendingEvent {
  std::int64_t at_ns;
  std::string node;
  std::string msg_id;
  EventKind kind;
  // delivery target for sends; empty otherwise
  std::string peer;

  // Tiebreak at equal true time: lexicographic (node, msg_id, kind name).
  // The enum order matches the alphabetical order of the kind names.
  bool operator<(const PendingEvent& o) const {
    return std::tie(at_ns, node, msg_id, kind) <
           std::tie(o.at_ns, o.node, o.msg_id, o.kind);
  }
};

struct SyncReply {
  std::string slave;
  std::string master;
  std::int64_t residence_ns;
};

class Engine {
 public:
  explicit Engine(const Scenario& s) : scenario_(s) {
    for (const Node& n : s.nodes) {
      noise_.emplace(n.id, NoiseStream(s.seed, "node:" + n.id));
      last_displayed_.emplace(n.id, std::numeric_limits<std::int64_t>::min());
    }
    for (const Link& l : s.links)
      jitter_.emplace(link_key(l.a, l.b),
                      NoiseStream(s.seed, "link:" + link_key(l.a, l.b)));
  }

  Trace run() {
    for (const Message& m : scenario_.messages)
      queue_.insert({m.at_ns, m.from, m.msg_id, EventKind::Send, m.to});
    for (const Tick& t : scenario_.ticks)
      queue_.insert({t.at_ns, t.node, t.msg_id, EventKind::LocalTick, ""});
    for (std::size_t i = 0; i < scenario_.syncs.size(); ++i) {
      const SyncSchedule& s = scenario_.syncs[i];
      for (int rep = 0; rep < s.repetitions; ++rep) {
        const std::string base = "sync" + std::to_string(i) + "." + std::to_string(rep);
        const std::int64_t t0 = s.at_ns + static_cast<std::int64_t>(rep) * s.gap_ns;
        queue_.insert({t0, s.master, base + ".req", EventKind::Send, s.slave});
        replies_.emplace(base + ".req", SyncReply{s.slave, s.master, s.residence_ns});
      }
    }

    Trace trace;
    while (!queue_.empty()) {
      PendingEvent ev = *queue_.begin();
      queue_.erase(queue_.begin());
      record(trace, ev);
      if (ev.kind == EventKind::Send) {
        deliver(ev);
      } else if (ev.kind == EventKind::Receive) {
        auto it = replies_.find(ev.msg_id);
        if (it != replies_.end() && it->second.slave == ev.node) {
          // slave turns the exchange around once the request actually arrives
          std::string rsp = ev.msg_id.substr(0, ev.msg_id.size() - 4) + ".rsp";
          queue_.insert({ev.at_ns + it->second.residence_ns, it->second.slave,
                         std::move(rsp), EventKind::Send, it->second.master});
          replies_.erase(it);
        }
      }
    }
    return trace;
  }

 private:
  static std::string link_key(const std::string& a, const std::string& b) {
    return a < b ? a + ":" + b : b + ":" + a;
  }

  std::int64_t delivery_delay(const std::string& from, const std::string& to) {
    const Link& l = link_between(scenario_, from, to);
    std::int64_t d = l.a == from ? l.delay_ab_ns : l.delay_ba_ns;
    if (l.jitter_stddev_ns > 0) {
      const double z = jitter_.at(link_key(l.a, l.b)).next_gauss();
      const std::int64_t draw = static_cast<std::int64_t>(
          std::llround(z * static_cast<double>(l.jitter_stddev_ns)));
      d += std::max<std::int64_t>(0, draw);
    }
    return d;
  }

  void deliver(const PendingEvent& send) {
    const std::int64_t d = delivery_delay(send.node, send.peer);
    queue_.insert({send.at_ns + d, send.peer, send.msg_id, EventKind::Receive, ""});
  }

  void record(Trace& trace, const PendingEvent& ev) {
    const Node& node = node_by_id(scenario_, ev.node);
    std::int64_t displayed = read_clock(node.clock, ev.at_ns, noise_.at(ev.node));
    // physical clock reads are monotone per node
    std::int64_t& last = last_displayed_.at(ev.node);
    displayed = std::max(displayed, last);
    last = displayed;
    trace.push_back(TraceEvent{ev.kind, ev.node, ev.at_ns, displayed, ev.msg_id});
  }

  const Scenario& scenario_;
  std::multiset<PendingEvent> queue_;
  std::map<std::string, NoiseStream> noise_;
  std::map<std::string, NoiseStream> jitter_;
  std::map<std::string, std::int64_t> last_displayed_;
  std::map<std::string, SyncReply> replies_;
};

} // namespace

Trace run(const Scenario& scenario) {
  validate(scenario);
  Engine engine(scenario);
  return engine.run();
}

} // namespace clocklab::clocknet
