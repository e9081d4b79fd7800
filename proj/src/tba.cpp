#include "ptv/tba.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ptv {

namespace {

void check_symbols(const Automaton& a, const TimedWord& w) {
  for (const auto& ev : w) {
    if (!a.alphabet.contains(ev.symbol)) throw Error(ErrorCode::UnknownSymbol, ev.symbol.str());
  }
}

// Largest bound each timer is ever compared against. Past it, a clock value
// can never satisfy a guard again.
std::map<Timer, Rational> ceilings(const Automaton& a) {
  std::map<Timer, Rational> out;
  for (const auto& e : a.edges) {
    for (const auto& [t, b] : e.guard.bounds()) {
      auto [it, inserted] = out.emplace(t, b);
      if (!inserted && it->second < b) it->second = b;
    }
  }
  return out;
}

Configuration clamp(Configuration c, const std::map<Timer, Rational>& ceil) {
  for (const auto& [t, v] : c.clocks.values()) {
    const auto it = ceil.find(t);
    if (it == ceil.end()) {
      c.clocks.set(t, Rational(0));
    } else if (it->second < v) {
      c.clocks.set(t, it->second);
    }
  }
  return c;
}

// Ends of one pass over `events` starting `gap` after the previous event; the
// flag records whether an accepting state was entered on the way.
std::map<Configuration, bool> pass(const Tba& t, const Adjacency& adj, const Configuration& from,
                                   const TimedWord& events, const Rational& gap) {
  std::map<Configuration, bool> current{{from, false}};
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Rational elapsed = i == 0 ? gap : events[i].time - events[i - 1].time;
    std::map<Configuration, bool> next;
    for (const auto& [config, flag] : current) {
      for (auto& step : successors(t, adj, config, events[i].symbol, elapsed)) {
        const bool f = flag || t.accepting.contains(step.to.state);
        auto [it, inserted] = next.emplace(std::move(step.to), f);
        if (!inserted) it->second = it->second || f;
      }
    }
    current = std::move(next);
  }
  return current;
}

// Strongly connected components, iterative Tarjan.
std::vector<std::size_t> components(const std::vector<std::vector<std::pair<std::size_t, bool>>>& out) {
  const std::size_t n = out.size();
  const std::size_t unset = n;
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, comps = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, next] = work.back();
      if (next < out[v].size()) {
        const std::size_t w = out[v][next++].first;
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const std::size_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
    }
  }
  return comp;
}

}  // namespace

void Tba::validate() const {
  Automaton::validate();
  for (const auto& s : accepting) {
    if (!states.contains(s)) throw Error(ErrorCode::InvalidStructure, "accepting state " + s.str() + " not declared");
  }
}

std::set<Configuration> subrun(const Tba& t, const TimedWord& w, const StateId& from) {
  check_symbols(t, w);
  if (!t.states.contains(from)) throw Error(ErrorCode::InvalidStructure, "unknown state " + from.str());
  const Adjacency adj(t);
  std::set<Configuration> current{{from, ClockInterpretation::zero(t.clocks)}};
  for (std::size_t i = 0; i < w.size() && !current.empty(); ++i) {
    const Rational elapsed = i == 0 ? Rational(0) : w[i].time - w[i - 1].time;
    std::set<Configuration> next;
    for (const auto& c : current) {
      for (auto& step : successors(t, adj, c, w[i].symbol, elapsed)) next.insert(std::move(step.to));
    }
    current = std::move(next);
  }
  return current;
}

bool accepts_lasso(const Tba& t, const LassoWord& w, std::size_t node_limit) {
  check_symbols(t, w.prefix);
  check_symbols(t, w.cycle);
  if (w.cycle.empty()) throw Error(ErrorCode::UnsupportedLasso, "empty cycle");
  if (!(duration(w.cycle) < w.period)) {
    throw Error(ErrorCode::UnsupportedLasso, "period " + w.period.str() + " does not exceed the cycle span");
  }
  Rational first_gap(0);
  if (!w.prefix.empty()) {
    first_gap = w.cycle[0].time - w.prefix.items().back().time;
    if (first_gap.sign() <= 0) throw Error(ErrorCode::UnsupportedLasso, "cycle does not start after the prefix");
  }
  const Rational gap = w.cycle[0].time + w.period - w.cycle.items().back().time;

  const Adjacency adj(t);
  const auto ceil = ceilings(t);

  std::set<Configuration> entry;
  if (w.prefix.empty()) {
    entry.insert({t.start, ClockInterpretation::zero(t.clocks)});
  } else {
    entry = subrun(t, w.prefix, t.start);
  }

  // Boundary graph: a node is the configuration right after a full cycle pass.
  std::map<Configuration, std::size_t> ids;
  std::vector<Configuration> nodes;
  std::deque<std::size_t> todo;
  auto intern = [&](const Configuration& c) {
    auto [it, inserted] = ids.emplace(c, nodes.size());
    if (inserted) {
      if (nodes.size() >= node_limit) throw Error(ErrorCode::UnsupportedLasso, "boundary graph exceeds node limit");
      nodes.push_back(c);
      todo.push_back(it->second);
    }
    return it->second;
  };
  for (const auto& c : entry) {
    for (const auto& [end, _] : pass(t, adj, clamp(c, ceil), w.cycle, first_gap)) intern(clamp(end, ceil));
  }
  std::vector<std::vector<std::pair<std::size_t, bool>>> out;
  while (!todo.empty()) {
    const std::size_t u = todo.front();
    todo.pop_front();
    std::vector<std::pair<std::size_t, bool>> arcs;
    for (const auto& [end, flag] : pass(t, adj, nodes[u], w.cycle, gap)) arcs.emplace_back(intern(clamp(end, ceil)), flag);
    if (out.size() <= u) out.resize(u + 1);
    out[u] = std::move(arcs);
  }
  out.resize(nodes.size());

  const auto comp = components(out);
  for (std::size_t u = 0; u < out.size(); ++u) {
    for (const auto& [v, flag] : out[u]) {
      if (flag && comp[u] == comp[v]) return true;
    }
  }
  return false;
}

DelayResult delay_tba(const Tba& t, const std::vector<StateId>& path) {
  if (path.size() < 2) throw Error(ErrorCode::NoSuchPath, "a state path needs at least two states");
  if (!t.states.contains(path.front()) || !t.reachable_from(t.start).contains(path.front())) {
    throw Error(ErrorCode::UnreachablePathStart, path.front().str());
  }
  std::vector<std::vector<std::size_t>> choices;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    choices.push_back(t.edges_between(path[i], path[i + 1]));
    if (choices.back().empty()) throw Error(ErrorCode::NoSuchPath, "no edge " + path[i].str() + " -> " + path[i + 1].str());
  }

  std::optional<DelayResult> best;
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    EdgePath edges;
    for (std::size_t i = 0; i < pick.size(); ++i) edges.push_back(t.edges[choices[i][pick[i]]]);
    DelayResult r = path_delay(edges, t.clocks);
    if (!r.bounded) return r;
    if (!best || best->value < r.value || (best->value == r.value && r.attained && !best->attained)) best = std::move(r);

    std::size_t i = pick.size();
    while (i > 0 && ++pick[i - 1] == choices[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
  }
  return *best;
}

}  // namespace ptv
