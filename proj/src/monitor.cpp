#include "ptv/monitor.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ptv {

namespace {

struct Outcome {
  std::set<Configuration> next;
  std::optional<std::size_t> action;  // first feasible (or, on a violation, first matching) edge
  bool matched = false;
  bool feasible = false;
  std::vector<GuardAtom> failed;
  std::string values;  // clock values behind `failed`
};

Outcome step(const Automaton& a, const Adjacency& adj, const std::set<Configuration>& from, const Symbol& symbol,
             const Rational& elapsed) {
  Outcome out;
  for (const auto& c : from) {
    for (auto& s : successors(a, adj, c, symbol, elapsed)) {
      out.feasible = true;
      if (!out.action || s.edge < *out.action) out.action = s.edge;
      out.next.insert(std::move(s.to));
    }
  }
  if (out.feasible) {
    out.matched = true;
    return out;
  }
  std::set<Timer> seen;
  for (const auto& c : from) {
    const ClockInterpretation now = c.clocks.advanced(elapsed);
    for (const auto i : adj.out(c.state)) {
      const Edge& e = a.edges[i];
      if (e.symbol != symbol) continue;
      out.matched = true;
      if (!out.action || i < *out.action) out.action = i;
      for (const auto& atom : e.guard.violated(now)) {
        if (seen.insert(atom.timer).second) {
          out.failed.push_back(atom);
          if (!out.values.empty()) out.values += ", ";
          out.values += atom.timer.str() + " = " + now.at(atom.timer).str() + " not < " + atom.bound.str();
        }
      }
      out.next.insert({e.to, now.with_reset(e.resets)});
    }
  }
  if (!out.matched) {
    for (const auto& c : from) out.next.insert({c.state, c.clocks.advanced(elapsed)});
  }
  return out;
}

bool any_state(const std::set<Configuration>& configs, const std::set<StateId>& targets) {
  return std::any_of(configs.begin(), configs.end(), [&](const Configuration& c) { return targets.contains(c.state); });
}

std::vector<Timer> timers_of(const std::vector<GuardAtom>& atoms) {
  std::vector<Timer> out;
  for (const auto& a : atoms) out.push_back(a.timer);
  std::sort(out.begin(), out.end());
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::GuardViolated: return "GuardViolated";
    case ViolationKind::NoTransition: return "NoTransition";
    case ViolationKind::JoinBeforeChildComplete: return "JoinBeforeChildComplete";
    case ViolationKind::ChildGuardViolated: return "ChildGuardViolated";
    case ViolationKind::ChildIncomplete: return "ChildIncomplete";
  }
  return "Unknown";
}

Monitor::Monitor(Pts system) : sys_(std::move(system)), parent_adj_(sys_.parent) {
  for (const auto& [id, tfa] : sys_.children) child_adj_.emplace(id, Adjacency(tfa));
  parent_.insert({sys_.parent.start, ClockInterpretation::zero(sys_.parent.clocks)});
}

void Monitor::add(ViolationKind kind, const TraceEvent& e, std::vector<Timer> timers, std::string detail) {
  report_.violations.push_back({kind, e.time, e.proc, e.symbol, std::move(timers), std::move(detail)});
}

void Monitor::feed(const TraceEvent& e) {
  if (last_ && !(*last_ < e.time)) {
    throw Error(ErrorCode::OutOfOrderEvent, "event at " + e.time.str() + " after " + last_->str());
  }
  last_ = e.time;
  if (e.proc == 0) {
    feed_parent(e);
  } else {
    feed_child(e);
  }
}

void Monitor::feed_parent(const TraceEvent& e) {
  const Tba& p = sys_.parent;
  const Rational elapsed = parent_last_ ? e.time - *parent_last_ : Rational(0);
  parent_last_ = e.time;
  const bool had_start = any_state(parent_, {p.start});

  Outcome out = step(p, parent_adj_, parent_, e.symbol, elapsed);
  if (!out.matched) {
    add(ViolationKind::NoTransition, e, {}, "parent has no edge on " + e.symbol.str());
  } else if (!out.feasible) {
    add(ViolationKind::GuardViolated, e, timers_of(out.failed), "parent " + e.symbol.str() + ": " + out.values);
  }
  parent_ = std::move(out.next);

  if (out.action) {
    const EdgeKey key = p.edges[*out.action].key();
    for (const auto& j : sys_.joins) {
      if (j.edge != key) continue;
      bool any = false;
      for (auto it = live_.begin(); it != live_.end();) {
        if (it->second.child != j.child) {
          ++it;
          continue;
        }
        any = true;
        if (!it->second.complete) {
          add(ViolationKind::JoinBeforeChildComplete, e, {},
              "instance " + std::to_string(it->first) + " of " + j.child.str() + " has not completed");
        }
        it = live_.erase(it);
      }
      if (!any) add(ViolationKind::JoinBeforeChildComplete, e, {}, "no live instance of " + j.child.str());
    }
    for (const auto& f : sys_.forks) {
      if (f.edge != key) continue;
      unsigned id = 1;
      while (live_.contains(id)) ++id;
      const Tfa& child = sys_.children.at(f.child);
      Instance inst;
      inst.child = f.child;
      inst.configs.insert({child.start, ClockInterpretation::zero(child.clocks)});
      inst.complete = child.start == child.accept;
      live_.emplace(id, std::move(inst));
    }
  }

  if (!cycle_start_ && had_start) {
    cycle_start_ = e.time;
  } else if (cycle_start_ && any_state(parent_, {p.start})) {
    report_.cycle_durations.push_back(e.time - *cycle_start_);
    ++report_.cycles;
    cycle_start_.reset();
  }
  if (any_state(parent_, p.accepting)) ++report_.accepting_visits;
}

void Monitor::feed_child(const TraceEvent& e) {
  const auto it = live_.find(e.proc);
  if (it == live_.end()) {
    add(ViolationKind::NoTransition, e, {}, "no live child instance " + std::to_string(e.proc));
    return;
  }
  Instance& inst = it->second;
  const Tfa& child = sys_.children.at(inst.child);
  const Rational elapsed = inst.last ? e.time - *inst.last : Rational(0);
  inst.last = e.time;

  Outcome out = step(child, child_adj_.at(inst.child), inst.configs, e.symbol, elapsed);
  const std::string who = inst.child.str() + "#" + std::to_string(e.proc);
  if (!out.matched) {
    add(ViolationKind::NoTransition, e, {}, who + " has no edge on " + e.symbol.str());
  } else if (!out.feasible) {
    add(ViolationKind::ChildGuardViolated, e, timers_of(out.failed), who + " " + e.symbol.str() + ": " + out.values);
  }
  inst.configs = std::move(out.next);
  if (any_state(inst.configs, {child.accept})) inst.complete = true;
}

std::map<unsigned, ChildId> Monitor::live_instances() const {
  std::map<unsigned, ChildId> out;
  for (const auto& [id, inst] : live_) out.emplace(id, inst.child);
  return out;
}

MonitorReport Monitor::finish() const {
  MonitorReport r = report_;
  for (const auto& [id, inst] : live_) {
    if (inst.complete) continue;
    r.violations.push_back({ViolationKind::ChildIncomplete, last_.value_or(Rational(0)), id, Symbol(), {},
                            "instance " + std::to_string(id) + " of " + inst.child.str() + " never completed"});
  }
  return r;
}

MonitorReport monitor_trace(const Pts& system, const std::vector<TraceEvent>& trace) {
  Monitor m(system);
  for (const auto& e : trace) m.feed(e);
  return m.finish();
}

std::vector<TraceEvent> parse_trace(std::string_view csv) {
  std::vector<TraceEvent> out;
  std::size_t start = 0;
  int line = 0;
  bool first = true;
  while (start <= csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    const std::string text = trim(csv.substr(start, end - start));
    start = end + 1;
    ++line;
    if (text.empty() || text.front() == '#') continue;
    if (first) {
      first = false;
      std::string compact;
      for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) == 0) compact += c;
      }
      if (compact == "proc,symbol,time") continue;
    }
    std::vector<std::string> fields;
    std::size_t from = 0;
    while (true) {
      const std::size_t comma = text.find(',', from);
      fields.push_back(trim(std::string_view(text).substr(from, comma == std::string::npos ? std::string::npos : comma - from)));
      if (comma == std::string::npos) break;
      from = comma + 1;
    }
    if (fields.size() != 3) throw SyntaxError(line, 1, "proc,symbol,time", "'" + text + "'");
    const std::string& p = fields[0];
    if (p.empty() || p.size() > 9 || !std::all_of(p.begin(), p.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
      throw SyntaxError(line, 1, "process number", "'" + p + "'");
    }
    if (fields[1].empty() || !std::all_of(fields[1].begin(), fields[1].end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
        })) {
      throw SyntaxError(line, static_cast<int>(p.size()) + 2, "symbol", "'" + fields[1] + "'");
    }
    const auto time = Rational::try_parse(fields[2]);
    if (!time || time->sign() < 0) throw SyntaxError(line, static_cast<int>(text.rfind(',')) + 2, "time", "'" + fields[2] + "'");
    out.push_back({static_cast<unsigned>(std::stoul(p)), Symbol(fields[1]), *time});
  }
  return out;
}

std::string format_trace(const std::vector<TraceEvent>& trace) {
  std::ostringstream os;
  os << "proc,symbol,time\n";
  for (const auto& e : trace) os << e.proc << "," << e.symbol << "," << e.time << "\n";
  return os.str();
}

}  // namespace ptv
