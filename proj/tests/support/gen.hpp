#pragma once

#include <cstdint>
#include <random>

#include "ptv/dsl.hpp"
#include "ptv/pts.hpp"

namespace ptv::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
  /// n/d with d drawn from {1, 2, 4, 8} and the value in [lo, hi].
  Rational rational(int lo, int hi);
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

struct TfaShape {
  int max_states = 5;
  int max_edges = 7;
  int clocks = 2;
  int max_bound = 12;
  bool fractional_bounds = false;
  double guard_p = 0.3;
  double reset_p = 0.35;
};

/// Valid, well-formed TFA whose accepting state is reachable.
Tfa tfa(Rng& rng, const TfaShape& shape = {});

/// Well-formed TFA with a bounded, nonzero max delay.
Tfa bounded_tfa(Rng& rng, const TfaShape& shape);

/// Random edge chain over the given clocks (not necessarily well formed).
EdgePath chain(Rng& rng, int length, int clocks, int max_bound);

/// Word following a random walk from start; gaps may break guards.
TimedWord walk_word(Rng& rng, const Tfa& a, int max_len = 6);

/// Random system: parent loop with one or two children forked and joined.
Pts pts(Rng& rng);

/// Random document mixing tfa, tba and pts declarations.
SpecDocument document(Rng& rng);

/// Copy with every guard bound multiplied by `factor`.
Automaton scale_bounds(const Automaton& a, const Rational& factor);

}  // namespace ptv::gen
