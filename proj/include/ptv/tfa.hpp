#pragma once

#include <optional>
#include <vector>

#include "ptv/automaton.hpp"
#include "ptv/delay.hpp"
#include "ptv/wellformed.hpp"

namespace ptv {

/// Timed finite automaton with a single accepting state.
struct Tfa : Automaton {
  StateId accept;

  /// Throws like Automaton::validate, or InvalidStructure for a bad accept state.
  void validate() const;

  friend bool operator==(const Tfa&, const Tfa&) = default;
};

struct TfaStep {
  StateId state;                     // state before reading `symbol`
  ClockInterpretation interpretation;  // values before the delta for this step
  Symbol symbol;
  Timestamp time;
  std::size_t edge;
};

struct TfaRun {
  std::vector<TfaStep> steps;
  StateId final_state;
};

/// A run over `w` with clocks zeroed at the first timestamp, or nullopt.
/// Prefers a run ending in the accepting state. Throws Error(UnknownSymbol).
std::optional<TfaRun> run_word(const Tfa& a, const TimedWord& w);

/// Throws Error(UnknownSymbol).
bool accepts(const Tfa& a, const TimedWord& w);

/// Throws Error(NotWellFormed | NoAcceptingPath).
DelayResult max_delay(const Tfa& a);

}  // namespace ptv
