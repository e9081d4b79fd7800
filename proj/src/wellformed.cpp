#include "ptv/wellformed.hpp"

#include <deque>
#include <map>
#include <optional>
#include <utility>

namespace ptv {

namespace {

using Node = std::pair<StateId, int>;  // state, guard checks so far

struct Back {
  std::optional<Node> prev;
  std::size_t edge = 0;
};

std::optional<EdgePath> twice_checked(const Automaton& a, const Adjacency& adj, const Timer& timer) {
  std::map<Node, Back> seen;
  std::deque<Node> todo;
  for (const auto& s : a.states) {
    seen[{s, 0}] = Back{};
    todo.emplace_back(s, 0);
  }
  while (!todo.empty()) {
    const Node node = todo.front();
    todo.pop_front();
    for (const auto i : adj.out(node.first)) {
      const Edge& e = a.edges[i];
      const int phase = node.second + (e.guard.bounds().contains(timer) ? 1 : 0);
      if (phase == 2) {
        EdgePath path{e};
        for (Node at = node; seen.at(at).prev; at = *seen.at(at).prev) path.insert(path.begin(), a.edges[seen.at(at).edge]);
        return path;
      }
      const Node next{e.to, phase};
      if (seen.emplace(next, Back{node, i}).second) todo.push_back(next);
    }
  }
  return std::nullopt;
}

}  // namespace

std::string WellFormedReport::summary() const {
  if (ok()) return "well-formed";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += "timer " + v.timer.str() + " checked twice on";
    for (const auto& e : v.witness) out += " [" + to_string(e.key()) + "]";
  }
  return out;
}

WellFormedReport check_well_formed(const Automaton& a) {
  const Adjacency adj(a);
  WellFormedReport report;
  for (const auto& t : a.clocks) {
    if (auto w = twice_checked(a, adj, t)) report.violations.push_back({t, std::move(*w)});
  }
  return report;
}

}  // namespace ptv
