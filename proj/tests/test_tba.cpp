#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ptv/tba.hpp"

using namespace ptv;

namespace {

const Tba& tba1() {
  static const SpecDocument doc = fixtures::load("tba1.pts");
  return doc.tba("TBA1");
}

LassoWord lasso(const std::string& text) { return parse_lasso(text); }

}  // namespace

TEST(Tba, LassoWithinWindowIsAccepted) {
  EXPECT_TRUE(accepts_lasso(tba1(), lasso("| a@0 b@10 c@40 period=50")));
  EXPECT_TRUE(accepts_lasso(tba1(), lasso("| a@0 b@1 b@2 c@49.9 period=100")));
}

TEST(Tba, LassoBreakingWindowIsRejected) {
  EXPECT_FALSE(accepts_lasso(tba1(), lasso("| a@0 b@10 c@60 period=70")));
  EXPECT_FALSE(accepts_lasso(tba1(), lasso("| a@0 c@50 period=51")));
}

TEST(Tba, PrefixThenCycle) {
  EXPECT_TRUE(accepts_lasso(tba1(), lasso("a@0 c@5 | a@10 c@20 period=15")));
  EXPECT_FALSE(accepts_lasso(tba1(), lasso("a@0 c@55 | a@60 c@70 period=15")));
}

TEST(Tba, CycleMustVisitAccepting) {
  // loops in q2 forever after the prefix
  EXPECT_FALSE(accepts_lasso(tba1(), lasso("a@0 | b@1 period=1")));
}

TEST(Tba, RotationInvariance) {
  // same infinite word written with a longer prefix
  const bool base = accepts_lasso(tba1(), lasso("| a@0 b@10 c@40 period=50"));
  const bool rotated = accepts_lasso(tba1(), lasso("a@0 | b@10 c@40 a@50 period=50"));
  const bool unrolled = accepts_lasso(tba1(), lasso("a@0 b@10 c@40 | a@50 b@60 c@90 period=50"));
  EXPECT_EQ(base, rotated);
  EXPECT_EQ(base, unrolled);
  const bool bad = accepts_lasso(tba1(), lasso("| a@0 c@50 period=51"));
  EXPECT_EQ(bad, accepts_lasso(tba1(), lasso("a@0 | c@50 a@51 period=51")));
}

TEST(Tba, MalformedLassos) {
  auto code = [](const LassoWord& w) {
    try {
      (void)accepts_lasso(tba1(), w);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidWord;
  };
  LassoWord w = lasso("| a@0 c@10 period=50");
  w.period = 10;
  EXPECT_EQ(code(w), ErrorCode::UnsupportedLasso);
  w = lasso("a@5 | a@10 c@20 period=50");
  w.cycle = TimedWord({{Symbol("a"), 1}});
  EXPECT_EQ(code(w), ErrorCode::UnsupportedLasso);
  w.cycle = TimedWord{};
  EXPECT_EQ(code(w), ErrorCode::UnsupportedLasso);
}

TEST(Tba, SubrunEndConfigurations) {
  const auto ends = subrun(tba1(), parse_word("a@3 b@4 b@6"), StateId("q1"));
  ASSERT_EQ(ends.size(), 1u);
  EXPECT_EQ(ends.begin()->state, StateId("q2"));
  EXPECT_EQ(ends.begin()->clocks.at(Timer("T")), Rational(3));
  EXPECT_TRUE(subrun(tba1(), parse_word("c@1"), StateId("q1")).empty());
}

TEST(Tba, DelayOverStatePaths) {
  const auto d = delay_tba(tba1(), {StateId("q1"), StateId("q2"), StateId("q1")});
  ASSERT_TRUE(d.bounded);
  EXPECT_EQ(d.value, Rational(50));
  EXPECT_FALSE(d.attained);
  const auto loop = delay_tba(tba1(), {StateId("q1"), StateId("q2"), StateId("q2"), StateId("q2"), StateId("q1")});
  EXPECT_EQ(loop.value, Rational(50));
  EXPECT_FALSE(delay_tba(tba1(), {StateId("q1"), StateId("q2"), StateId("q2")}).bounded);
}

TEST(Tba, DelayErrors) {
  auto code = [](const std::vector<StateId>& p) {
    try {
      (void)delay_tba(tba1(), p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidWord;
  };
  EXPECT_EQ(code({StateId("q1")}), ErrorCode::NoSuchPath);
  EXPECT_EQ(code({StateId("q1"), StateId("q1")}), ErrorCode::NoSuchPath);
  Tba t = tba1();
  t.states.insert(StateId("island"));
  t.alphabet.insert(Symbol("z"));
  t.edges.push_back({StateId("island"), StateId("q1"), Symbol("z"), {}, {}});
  try {
    (void)delay_tba(t, {StateId("island"), StateId("q1")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnreachablePathStart);
  }
}

TEST(Tba, ParallelEdgesTakeWorstRealization) {
  Tba t = tba1();
  t.alphabet.insert(Symbol("d"));
  t.edges.push_back({StateId("q2"), StateId("q1"), Symbol("d"), Guard{{Timer("T"), 80}}, {}});
  EXPECT_EQ(delay_tba(t, {StateId("q1"), StateId("q2"), StateId("q1")}).value, Rational(80));
}
