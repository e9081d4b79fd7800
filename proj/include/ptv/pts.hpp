#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ptv/tba.hpp"
#include "ptv/tfa.hpp"

namespace ptv {

/// A fork or join of `child` on the parent edge `edge`.
struct Annotation {
  EdgeKey edge;
  ChildId child;

  friend bool operator==(const Annotation&, const Annotation&) = default;
  friend auto operator<=>(const Annotation&, const Annotation&) = default;
};

/// Parent TBA, child TFAs and the fork/join relations on parent edges.
struct Pts {
  Tba parent;
  std::map<ChildId, Tfa> children;
  std::set<Annotation> forks;
  std::set<Annotation> joins;

  /// Throws Error(InvalidStructure) for dangling edges or children, or a child
  /// that is not both forked and joined.
  void validate() const;
};

/// Timer standing in for `child` after flattening.
Timer derived_timer(const ChildId& child);

struct FlattenedRelations {
  std::map<EdgeKey, std::set<Timer>> inits;  // derived timers reset on fork edges
  std::map<EdgeKey, Guard> guards;           // T_X < delay(X) on join edges
  std::map<ChildId, DelayResult> child_delays;
};

/// Throws Error(NotWellFormed | UnboundedChild | DegenerateChild).
FlattenedRelations flatten(const Pts& s);

/// The parent with its own timers replaced by the derived ones.
Tba flattened_parent(const Pts& s, const FlattenedRelations& f);

struct UsePair {
  EdgeKey fork_edge;
  EdgeKey join_edge;
  ChildId child;

  friend bool operator==(const UsePair&, const UsePair&) = default;
  friend auto operator<=>(const UsePair&, const UsePair&) = default;
};

std::set<UsePair> uses(const Pts& s);

struct ConsistencyCheck {
  std::vector<StateId> path;
  DelayResult flattened;
  DelayResult parent;
  bool ok = false;
};

struct ConsistencyVerdict {
  bool consistent = true;
  std::vector<ConsistencyCheck> checks;
  std::vector<std::string> warnings;

  /// First failing check, or nullptr.
  const ConsistencyCheck* witness() const;
};

/// Compares the flattened and original parent over every parent path that
/// starts with a fork edge and ends at the first later occurrence of a join
/// edge (any children), each edge used at most twice and the fork edge once.
ConsistencyVerdict check_consistency(const Pts& s);

/// Worst duration of one traversal of the parent from its start state back to
/// itself: max of delay_tba over simple cycles through start. Unbounded when
/// there is no such cycle.
DelayResult cycle_bound(const Pts& s);

}  // namespace ptv
