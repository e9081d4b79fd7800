#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ptv/core.hpp"

namespace ptv {

/// Graph shared by TFAs and TBAs: alphabet, clocks, states, start and edges.
/// Edge order is significant; it fixes enumeration order and tie-breaks.
struct Automaton {
  std::set<Symbol> alphabet;
  std::set<Timer> clocks;
  std::set<StateId> states;
  StateId start;
  std::vector<Edge> edges;

  /// Throws Error(InvalidStructure | UnknownSymbol | UnknownTimer).
  void validate() const;

  std::vector<std::size_t> edges_from(const StateId& from) const;
  std::vector<std::size_t> edges_between(const StateId& from, const StateId& to) const;
  /// Index of the edge with this key, or edges.size().
  std::size_t find(const EdgeKey& key) const;

  std::set<StateId> reachable_from(const StateId& from) const;
  /// States from which some state in `targets` is reachable (targets included).
  std::set<StateId> coreachable_to(const std::set<StateId>& targets) const;

  friend bool operator==(const Automaton&, const Automaton&) = default;
};

/// A state together with the current timer values.
struct Configuration {
  StateId state;
  ClockInterpretation clocks;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Adjacency lists by state, built once for repeated traversal.
class Adjacency {
 public:
  explicit Adjacency(const Automaton& a);
  const std::vector<std::size_t>& out(const StateId& s) const;

 private:
  std::map<StateId, std::vector<std::size_t>> out_;
  std::vector<std::size_t> none_;
};

/// Interpretation after taking `edge` `elapsed` time units after the previous
/// step, or nullopt when the guard fails. Guard is checked before resets.
std::optional<ClockInterpretation> fire(const Edge& edge, const ClockInterpretation& before,
                                        const Rational& elapsed);

struct Step {
  Configuration to;
  std::size_t edge;
};

/// Every way to read `symbol` from `from` after `elapsed` time units.
std::vector<Step> successors(const Automaton& a, const Adjacency& adj, const Configuration& from,
                             const Symbol& symbol, const Rational& elapsed);

}  // namespace ptv
