// Generated-case property suites. Each runs at least 1000 cases.
#include <gtest/gtest.h>

#include "gen.hpp"
#include "ptv/dsl.hpp"
#include "ptv/tfa.hpp"

using namespace ptv;

namespace {

constexpr int kCases = 1000;

gen::TfaShape fractional() {
  gen::TfaShape s;
  s.fractional_bounds = true;
  s.max_bound = 10;
  s.guard_p = 0.45;
  return s;
}

Tfa scaled(const Tfa& a, const Rational& f) {
  Tfa out = a;
  static_cast<Automaton&>(out) = gen::scale_bounds(a, f);
  return out;
}

// Raise one guard bound or drop the atom entirely.
Tfa loosened(gen::Rng& rng, const Tfa& a) {
  Tfa out = a;
  std::vector<std::pair<std::size_t, Timer>> atoms;
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    for (const auto& [x, c] : out.edges[i].guard.bounds()) atoms.emplace_back(i, x);
  }
  if (atoms.empty()) return out;
  const auto& [i, x] = atoms[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(atoms.size()) - 1))];
  Guard g;
  const bool drop = rng.coin(0.3);
  for (const auto& [t, c] : out.edges[i].guard.bounds()) {
    if (t != x) {
      g.add(GuardAtom(t, c));
    } else if (!drop) {
      g.add(GuardAtom(t, c + rng.rational(0, 5)));
    }
  }
  out.edges[i].guard = g;
  return out;
}

}  // namespace

TEST(Properties, TimeShiftInvariance) {
  gen::Rng rng(101);
  int accepted = 0;
  for (int i = 0; i < kCases; ++i) {
    const Tfa a = gen::tfa(rng, fractional());
    const TimedWord w = gen::walk_word(rng, a);
    const Rational shift = rng.rational(0, 40) - w[0].time;
    const TimedWord v = w.shifted(shift);
    const bool base = accepts(a, w);
    accepted += base ? 1 : 0;
    ASSERT_EQ(base, accepts(a, v)) << "case " << i << ": " << format_word(w) << " shifted by " << shift;
    ASSERT_EQ(duration(w), duration(v));
  }
  EXPECT_GT(accepted, kCases / 20);
}

TEST(Properties, ScaleCovariance) {
  gen::Rng rng(202);
  int accepted = 0;
  for (int i = 0; i < kCases; ++i) {
    const Tfa a = gen::tfa(rng, fractional());
    const TimedWord w = gen::walk_word(rng, a);
    const Rational f = Rational(rng.uniform(1, 32), rng.uniform(1, 8));
    const Tfa b = scaled(a, f);
    const bool base = accepts(a, w);
    accepted += base ? 1 : 0;
    ASSERT_EQ(base, accepts(b, w.scaled(f))) << "case " << i << ": " << format_word(w) << " by " << f;

    const DelayResult da = max_delay(a);
    const DelayResult db = max_delay(b);
    ASSERT_EQ(da.bounded, db.bounded) << "case " << i;
    if (da.bounded) {
      ASSERT_EQ(da.value * f, db.value) << "case " << i;
      ASSERT_EQ(da.attained, db.attained) << "case " << i;
    }
  }
  EXPECT_GT(accepted, kCases / 20);
}

TEST(Properties, GuardLooseningMonotonicity) {
  gen::Rng rng(303);
  for (int i = 0; i < kCases; ++i) {
    const Tfa a = gen::tfa(rng, fractional());
    const Tfa b = loosened(rng, a);
    ASSERT_TRUE(at_most(max_delay(a), max_delay(b))) << "case " << i;

    const TimedWord w = gen::walk_word(rng, a);
    if (accepts(a, w)) ASSERT_TRUE(accepts(b, w)) << "case " << i << ": " << format_word(w);

    const EdgePath p = gen::chain(rng, rng.uniform(1, 6), 2, 8);
    EdgePath q = p;
    auto& e = q[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(q.size()) - 1))];
    Guard g;
    for (const auto& [x, c] : e.guard.bounds()) {
      if (!rng.coin(0.3)) g.add(GuardAtom(x, c + rng.rational(0, 3)));
    }
    e.guard = g;
    const std::set<Timer> clocks{Timer("x"), Timer("y")};
    ASSERT_TRUE(at_most(path_delay(p, clocks), path_delay(q, clocks))) << "case " << i;
  }
}

TEST(Properties, DslRoundTripIdentity) {
  gen::Rng rng(404);
  for (int i = 0; i < kCases; ++i) {
    const SpecDocument doc = gen::document(rng);
    const std::string text = serialize(doc);
    SpecDocument back;
    ASSERT_NO_THROW(back = parse_spec(text)) << "case " << i << "\n" << text;
    ASSERT_EQ(back, doc) << "case " << i << "\n" << text;
    ASSERT_EQ(serialize(back), text) << "case " << i;
  }
}
