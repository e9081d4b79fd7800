#pragma once

#include <optional>
#include <set>
#include <string>

#include "ptv/automaton.hpp"
#include "ptv/core.hpp"

namespace ptv {

/// Supremum of segment duration (last event time minus first) over all timed
/// words driving a path. `value` and `attained` are meaningful only when bounded.
struct DelayResult {
  bool bounded = false;
  Rational value;
  bool attained = false;
  EdgePath witness;

  static DelayResult unbounded(EdgePath witness);
  static DelayResult of(Rational value, bool attained, EdgePath witness);

  /// "25", "1/3" or "unbounded".
  std::string str() const;
};

/// a <= b as suprema. Unbounded is the top element.
bool at_most(const DelayResult& a, const DelayResult& b);

/// Shortest distance from the first to the last node of the difference
/// constraint graph of `path`. Throws Error(UnchainedPath | UnknownTimer).
///
/// A guard `x < c` on edge j constrains tau_j - tau_i < c where i is the most
/// recent edge strictly before j that resets x. When no earlier edge on the
/// path resets x the reset is placed at the first edge (clock zero at tau_1,
/// or the latest moment a prefix could have reset it).
DelayResult path_delay(const EdgePath& path, const std::set<Timer>& clocks);

/// Max of path_delay over paths from `a.start` ending in `accepting`, each edge
/// used at most twice. Ties go to attained results, then to the lexicographically
/// smallest edge-index sequence. Throws Error(NotWellFormed | NoAcceptingPath).
DelayResult automaton_max_delay(const Automaton& a, const std::set<StateId>& accepting);

/// Same enumeration without the well-formedness check.
DelayResult enumerate_max_delay(const Automaton& a, const std::set<StateId>& accepting);

}  // namespace ptv
