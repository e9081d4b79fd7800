#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "ptv/error.hpp"
#include "ptv/rational.hpp"

namespace ptv {

/// Strongly typed identifier. Distinct tags keep symbols, timers, states and
/// child ids from being mixed up.
template <typename Tag>
class Name {
 public:
  Name() = default;
  explicit Name(std::string value) : value_(std::move(value)) {}
  explicit Name(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Name& n) { return os << n.value_; }

 private:
  std::string value_;
};

using Symbol = Name<struct SymbolTag>;
using Timer = Name<struct TimerTag>;
using StateId = Name<struct StateTag>;
using ChildId = Name<struct ChildTag>;

struct TimedEvent {
  Symbol symbol;
  Timestamp time;

  friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

/// Finite timed word with strictly increasing timestamps.
class TimedWord {
 public:
  TimedWord() = default;
  /// Throws Error(InvalidWord) unless timestamps strictly increase.
  explicit TimedWord(std::vector<TimedEvent> items);

  const std::vector<TimedEvent>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const TimedEvent& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  TimedWord shifted(const Rational& offset) const;
  TimedWord scaled(const Rational& factor) const;

  friend bool operator==(const TimedWord&, const TimedWord&) = default;

 private:
  std::vector<TimedEvent> items_;
};

/// Last timestamp minus first. Throws Error(EmptyWord).
Rational duration(const TimedWord& word);

/// Valuation of every timer of an automaton.
class ClockInterpretation {
 public:
  ClockInterpretation() = default;
  static ClockInterpretation zero(const std::set<Timer>& clocks);

  /// Throws Error(UnknownTimer).
  const Rational& at(const Timer& timer) const;
  bool contains(const Timer& timer) const { return values_.contains(timer); }
  void set(const Timer& timer, Rational value) { values_[timer] = std::move(value); }
  const std::map<Timer, Rational>& values() const noexcept { return values_; }

  ClockInterpretation advanced(const Rational& delta) const;
  ClockInterpretation with_reset(const std::set<Timer>& timers) const;

  friend bool operator==(const ClockInterpretation&, const ClockInterpretation&) = default;
  friend auto operator<=>(const ClockInterpretation& a, const ClockInterpretation& b) {
    return a.values_ <=> b.values_;
  }

 private:
  std::map<Timer, Rational> values_;
};

/// `timer < bound`, bound strictly positive.
struct GuardAtom {
  Timer timer;
  Rational bound;

  GuardAtom(Timer t, Rational b);

  friend bool operator==(const GuardAtom&, const GuardAtom&) = default;
};

/// Conjunction of strict upper bounds, at most one per timer (the smallest).
class Guard {
 public:
  Guard() = default;
  Guard(std::initializer_list<GuardAtom> atoms);

  void add(const GuardAtom& atom);
  bool empty() const noexcept { return bounds_.empty(); }
  const std::map<Timer, Rational>& bounds() const noexcept { return bounds_; }
  std::vector<GuardAtom> atoms() const;

  /// Atoms not satisfied by `v`. Throws Error(UnknownTimer).
  std::vector<GuardAtom> violated(const ClockInterpretation& v) const;

  friend bool operator==(const Guard&, const Guard&) = default;

 private:
  std::map<Timer, Rational> bounds_;
};

/// True iff every atom `x < c` has v(x) < c. Throws Error(UnknownTimer).
bool guard_satisfied(const Guard& guard, const ClockInterpretation& v);

/// (from, to, symbol). Unique within an automaton.
struct EdgeKey {
  StateId from;
  StateId to;
  Symbol symbol;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

std::string to_string(const EdgeKey& key);

struct Edge {
  StateId from;
  StateId to;
  Symbol symbol;
  Guard guard;
  std::set<Timer> resets;

  EdgeKey key() const { return {from, to, symbol}; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

using EdgePath = std::vector<Edge>;

}  // namespace ptv
