#include "ptv/sim.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>

namespace ptv {

namespace {

Rational min_bound(const Guard& g) {
  Rational m = g.bounds().begin()->second;
  for (const auto& [_, b] : g.bounds()) {
    if (b < m) m = b;
  }
  return m;
}

// Edge indices of the first path from `from` to `to` that repeats no state,
// searching edges in declaration order. A cycle when from == to.
std::optional<std::vector<std::size_t>> first_simple_path(const Automaton& a, const StateId& from, const StateId& to) {
  const Adjacency adj(a);
  std::vector<std::size_t> path;
  std::set<StateId> on_path{from};
  auto dfs = [&](auto&& self, const StateId& at) -> bool {
    for (const auto i : adj.out(at)) {
      const StateId& next = a.edges[i].to;
      if (next == to) {
        path.push_back(i);
        return true;
      }
      if (on_path.contains(next)) continue;
      path.push_back(i);
      on_path.insert(next);
      if (self(self, next)) return true;
      on_path.erase(next);
      path.pop_back();
    }
    return false;
  };
  if (from != to && !a.states.contains(to)) return std::nullopt;
  if (dfs(dfs, from)) return path;
  return std::nullopt;
}

class Sampler {
 public:
  Sampler(const DelayProfile& profile, const std::vector<Fault>& faults) : profile_(profile), faults_(faults), rng_(profile.seed) {}

  Rational delay(const std::string& proc, const EdgeKey& edge, std::size_t cycle) {
    for (const auto& f : faults_) {
      if (f.proc == proc && f.edge == edge && f.cycle == cycle) return f.delay;
    }
    const DelaySpec& spec = profile_.delays.at({proc, edge});
    if (spec.lo == spec.hi) return spec.lo;
    const long n = ((spec.hi - spec.lo) * Rational(1000)).floor().to_long();
    std::uniform_int_distribution<long> pick(0, n);
    return spec.lo + Rational(pick(rng_), 1000);
  }

 private:
  const DelayProfile& profile_;
  const std::vector<Fault>& faults_;
  std::mt19937_64 rng_;
};

void check_profile(const Pts& s, const DelayProfile& profile) {
  auto need = [&](const std::string& proc, const Automaton& a) {
    for (const auto& e : a.edges) {
      const auto it = profile.delays.find({proc, e.key()});
      if (it == profile.delays.end()) {
        throw Error(ErrorCode::IncompleteProfile, "no delay for " + proc + " edge " + to_string(e.key()));
      }
      if (it->second.lo.sign() < 0 || it->second.hi < it->second.lo) {
        throw Error(ErrorCode::IncompleteProfile, "bad delay range for " + proc + " edge " + to_string(e.key()));
      }
    }
  };
  need(kParentProc, s.parent);
  for (const auto& [id, child] : s.children) need(id.str(), child);
}

}  // namespace

Rational sim_epsilon() { return Rational(1, 1000000); }

DelayProfile DelayProfile::from_bounds(const Pts& s, const Rational& fraction, const Rational& unguarded) {
  DelayProfile p;
  auto add = [&](const std::string& proc, const Automaton& a) {
    for (const auto& e : a.edges) {
      const Rational d = e.guard.empty() ? unguarded : fraction * min_bound(e.guard);
      p.delays[{proc, e.key()}] = DelaySpec::fixed(d);
    }
  };
  add(kParentProc, s.parent);
  for (const auto& [id, child] : s.children) add(id.str(), child);
  return p;
}

std::vector<TraceEvent> generate(const Pts& s, const DelayProfile& profile, std::size_t cycles,
                                 const std::vector<Fault>& faults) {
  check_profile(s, profile);
  const auto parent_path = first_simple_path(s.parent, s.parent.start, s.parent.start);
  if (!parent_path) throw Error(ErrorCode::NoParentCycle, "no simple cycle through " + s.parent.start.str());
  std::map<ChildId, std::vector<std::size_t>> child_paths;
  for (const auto& [id, child] : s.children) {
    if (child.start == child.accept) {
      child_paths[id] = {};
      continue;
    }
    auto path = first_simple_path(child, child.start, child.accept);
    if (!path) throw Error(ErrorCode::NoAcceptingPath, "child " + id.str());
    child_paths[id] = std::move(*path);
  }

  // One stream per process occurrence: the parent, then each forked child
  // instance. Times are on the schedule's own clock; the merge below may push a
  // whole stream later, never a single event, so gaps inside a stream are exact.
  struct Pending {
    TraceEvent event;
    std::vector<std::size_t> forks;  // streams started by this event
    std::vector<std::size_t> joins;  // streams that must finish first
  };
  struct Stream {
    std::vector<Pending> events;
    std::size_t next = 0;
    bool started = false;
    Rational shift;
  };
  std::vector<Stream> streams(1);
  streams[0].started = true;
  Sampler sampler(profile, faults);
  const Rational eps = sim_epsilon();
  struct Live {
    ChildId child;
    Rational done;
    std::size_t stream;
  };
  std::map<unsigned, Live> live;
  Rational t(0);

  for (std::size_t k = 0; k < cycles; ++k) {
    for (const auto i : *parent_path) {
      const Edge& e = s.parent.edges[i];
      Pending ev{{0, e.symbol, t + sampler.delay(kParentProc, e.key(), k)}, {}, {}};
      for (const auto& j : s.joins) {
        if (j.edge != e.key()) continue;
        for (auto it = live.begin(); it != live.end();) {
          if (it->second.child != j.child) {
            ++it;
            continue;
          }
          if (ev.event.time < it->second.done + eps) ev.event.time = it->second.done + eps;
          ev.joins.push_back(it->second.stream);
          it = live.erase(it);
        }
      }
      t = ev.event.time;
      for (const auto& f : s.forks) {
        if (f.edge != e.key()) continue;
        unsigned id = 1;
        while (live.contains(id)) ++id;
        const Tfa& child = s.children.at(f.child);
        Stream cs;
        Rational ct = t;
        for (const auto ci : child_paths.at(f.child)) {
          const Edge& ce = child.edges[ci];
          ct += sampler.delay(f.child.str(), ce.key(), k);
          cs.events.push_back({{id, ce.symbol, ct}, {}, {}});
        }
        ev.forks.push_back(streams.size());
        live.emplace(id, Live{f.child, ct, streams.size()});
        streams.push_back(std::move(cs));
      }
      streams[0].events.push_back(std::move(ev));
    }
  }

  auto finished = [&](std::size_t i) { return streams[i].started && streams[i].next == streams[i].events.size(); };
  auto at = [&](std::size_t i) { return streams[i].events[streams[i].next].event.time + streams[i].shift; };
  std::vector<TraceEvent> out;
  while (true) {
    // earliest ready event; the parent wins ties, then lower instance ids
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < streams.size(); ++i) {
      const Stream& st = streams[i];
      if (!st.started || st.next == st.events.size()) continue;
      const Pending& p = st.events[st.next];
      if (!std::all_of(p.joins.begin(), p.joins.end(), finished)) continue;
      if (!pick) {
        pick = i;
        continue;
      }
      const Rational a = at(i), b = at(*pick);
      const unsigned pa = p.event.proc, pb = streams[*pick].events[streams[*pick].next].event.proc;
      if (a < b || (a == b && pa < pb)) pick = i;
    }
    if (!pick) break;
    Stream& st = streams[*pick];
    Pending& p = st.events[st.next];
    Rational when = at(*pick);
    if (!out.empty() && when <= out.back().time) {
      st.shift += out.back().time + eps - when;
      when = out.back().time + eps;
    }
    for (const auto c : p.forks) {
      streams[c].started = true;
      streams[c].shift = st.shift;
    }
    out.push_back({p.event.proc, p.event.symbol, when});
    ++st.next;
  }
  return out;
}

CycleStats measure(const std::vector<TraceEvent>& trace, const Pts& s) {
  const MonitorReport r = monitor_trace(s, trace);
  if (!r.clean()) {
    const Violation& v = r.violations.front();
    throw Error(ErrorCode::DirtyTrace, std::to_string(r.violations.size()) + " violation(s), first " +
                                           std::string(to_string(v.kind)) + " at " + v.at.str() + ": " + v.detail);
  }
  CycleStats stats;
  stats.durations = r.cycle_durations;
  Rational sum(0);
  for (const auto& d : stats.durations) {
    if (stats.max < d) stats.max = d;
    sum += d;
  }
  if (!stats.durations.empty()) stats.mean = sum / Rational(static_cast<long>(stats.durations.size()));
  return stats;
}

}  // namespace ptv
