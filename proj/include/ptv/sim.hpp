#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ptv/monitor.hpp"
#include "ptv/pts.hpp"

namespace ptv {

/// Process name used for parent edges in profiles and faults.
inline const std::string kParentProc = "parent";

/// Fixed delay (lo == hi) or a range sampled uniformly on a 1/1000 grid.
struct DelaySpec {
  Rational lo;
  Rational hi;

  static DelaySpec fixed(Rational v) { return {v, v}; }
  static DelaySpec range(Rational lo, Rational hi) { return {std::move(lo), std::move(hi)}; }
};

struct DelayKey {
  std::string proc;  // kParentProc or a child id
  EdgeKey edge;

  friend bool operator==(const DelayKey&, const DelayKey&) = default;
  friend auto operator<=>(const DelayKey&, const DelayKey&) = default;
};

/// Gap before each edge's event, measured from the previous event of the same
/// process (for a child's first edge, from its fork).
struct DelayProfile {
  std::map<DelayKey, DelaySpec> delays;
  std::uint64_t seed = 0;

  /// Every guarded edge at `fraction` of its smallest bound, unguarded edges at `unguarded`.
  static DelayProfile from_bounds(const Pts& s, const Rational& fraction, const Rational& unguarded = Rational(1, 100));
};

/// Overrides one edge's delay in one cycle for one process.
struct Fault {
  std::string proc;
  EdgeKey edge;
  std::size_t cycle = 0;
  Rational delay;
};

/// Separation used to keep timestamps strictly increasing and joins after completions.
Rational sim_epsilon();

/// Events for `cycles` traversals of the parent's first simple cycle through its
/// start state; every fork starts the child's first simple path to its accept
/// state. Throws Error(IncompleteProfile | NoParentCycle | NoAcceptingPath).
std::vector<TraceEvent> generate(const Pts& s, const DelayProfile& profile, std::size_t cycles,
                                 const std::vector<Fault>& faults = {});

struct CycleStats {
  std::vector<Rational> durations;
  Rational max;
  Rational mean;
};

/// Throws Error(DirtyTrace) when the monitor reports any violation.
CycleStats measure(const std::vector<TraceEvent>& trace, const Pts& s);

}  // namespace ptv
