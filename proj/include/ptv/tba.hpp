#pragma once

#include <set>
#include <vector>

#include "ptv/automaton.hpp"
#include "ptv/delay.hpp"

namespace ptv {

/// Timed Büchi automaton: accepts infinite words visiting `accepting` infinitely often.
struct Tba : Automaton {
  std::set<StateId> accepting;

  void validate() const;

  friend bool operator==(const Tba&, const Tba&) = default;
};

/// prefix, then cycle, cycle + period, cycle + 2*period, ...
/// Cycle timestamps are absolute for the first iteration.
struct LassoWord {
  TimedWord prefix;
  TimedWord cycle;
  Rational period;
};

/// End configurations of all subruns over `w` from `from`, clocks zeroed at the
/// first timestamp. Throws Error(UnknownSymbol | InvalidStructure).
std::set<Configuration> subrun(const Tba& t, const TimedWord& w, const StateId& from);

/// Exact for any lasso: clock values are clamped at the largest bound each timer
/// is compared against, which makes the iteration-boundary graph finite.
/// Throws Error(UnsupportedLasso) for an empty cycle, a period not longer than
/// the cycle, a cycle overlapping the prefix, or a graph above `node_limit`.
bool accepts_lasso(const Tba& t, const LassoWord& w, std::size_t node_limit = 100000);

/// Max of path_delay over every edge chain realizing the state sequence.
/// Throws Error(NoSuchPath | UnreachablePathStart).
DelayResult delay_tba(const Tba& t, const std::vector<StateId>& path);

}  // namespace ptv
