#include "ptv/automaton.hpp"

#include <deque>

namespace ptv {

void Automaton::validate() const {
  if (!states.contains(start)) throw Error(ErrorCode::InvalidStructure, "start state " + start.str() + " not declared");
  std::set<EdgeKey> seen;
  for (const auto& e : edges) {
    const std::string where = "edge " + to_string(e.key());
    if (!states.contains(e.from) || !states.contains(e.to)) {
      throw Error(ErrorCode::InvalidStructure, where + " has an undeclared endpoint");
    }
    if (!alphabet.contains(e.symbol)) throw Error(ErrorCode::UnknownSymbol, where + " uses " + e.symbol.str());
    for (const auto& [t, _] : e.guard.bounds()) {
      if (!clocks.contains(t)) throw Error(ErrorCode::UnknownTimer, where + " guards " + t.str());
    }
    for (const auto& t : e.resets) {
      if (!clocks.contains(t)) throw Error(ErrorCode::UnknownTimer, where + " resets " + t.str());
    }
    if (!seen.insert(e.key()).second) throw Error(ErrorCode::InvalidStructure, "duplicate " + where);
  }
}

std::vector<std::size_t> Automaton::edges_from(const StateId& from) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from == from) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Automaton::edges_between(const StateId& from, const StateId& to) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from == from && edges[i].to == to) out.push_back(i);
  }
  return out;
}

std::size_t Automaton::find(const EdgeKey& key) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].key() == key) return i;
  }
  return edges.size();
}

std::set<StateId> Automaton::reachable_from(const StateId& from) const {
  std::set<StateId> seen{from};
  std::deque<StateId> todo{from};
  while (!todo.empty()) {
    const StateId s = todo.front();
    todo.pop_front();
    for (const auto& e : edges) {
      if (e.from == s && seen.insert(e.to).second) todo.push_back(e.to);
    }
  }
  return seen;
}

std::set<StateId> Automaton::coreachable_to(const std::set<StateId>& targets) const {
  std::set<StateId> seen = targets;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : edges) {
      if (seen.contains(e.to) && seen.insert(e.from).second) grew = true;
    }
  }
  return seen;
}

Adjacency::Adjacency(const Automaton& a) {
  for (std::size_t i = 0; i < a.edges.size(); ++i) out_[a.edges[i].from].push_back(i);
}

const std::vector<std::size_t>& Adjacency::out(const StateId& s) const {
  const auto it = out_.find(s);
  return it == out_.end() ? none_ : it->second;
}

std::optional<ClockInterpretation> fire(const Edge& edge, const ClockInterpretation& before,
                                        const Rational& elapsed) {
  ClockInterpretation now = before.advanced(elapsed);
  if (!guard_satisfied(edge.guard, now)) return std::nullopt;
  return now.with_reset(edge.resets);
}

std::vector<Step> successors(const Automaton& a, const Adjacency& adj, const Configuration& from,
                             const Symbol& symbol, const Rational& elapsed) {
  std::vector<Step> out;
  for (const auto i : adj.out(from.state)) {
    const Edge& e = a.edges[i];
    if (e.symbol != symbol) continue;
    if (auto next = fire(e, from.clocks, elapsed)) out.push_back({{e.to, std::move(*next)}, i});
  }
  return out;
}

}  // namespace ptv
