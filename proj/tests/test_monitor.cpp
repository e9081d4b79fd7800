#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ptv/monitor.hpp"
#include "ptv/sim.hpp"

using namespace ptv;

namespace {

const Pts& s1() {
  static const Pts s = fixtures::load("pts1.pts").system("S1");
  return s;
}

std::vector<TraceEvent> trace(std::initializer_list<std::tuple<unsigned, const char*, Rational>> items) {
  std::vector<TraceEvent> out;
  for (const auto& [p, sym, t] : items) out.push_back({p, Symbol(sym), t});
  return out;
}

}  // namespace

TEST(Monitor, CleanChildInsideParentWindow) {
  const auto r = monitor_trace(s1(), trace({{0, "a", 0}, {1, "0", 1}, {1, "1", 5}, {0, "c", 20}}));
  EXPECT_TRUE(r.clean());
  EXPECT_EQ(r.cycles, 1u);
  ASSERT_EQ(r.cycle_durations.size(), 1u);
  EXPECT_EQ(r.cycle_durations[0], Rational(20));
}

TEST(Monitor, ChildGuardBreach) {
  const auto r = monitor_trace(s1(), trace({{0, "a", 0}, {1, "0", 1}, {1, "1", 12}, {0, "c", 20}}));
  ASSERT_EQ(r.violations.size(), 1u);
  const Violation& v = r.violations[0];
  EXPECT_EQ(v.kind, ViolationKind::ChildGuardViolated);
  EXPECT_EQ(v.at, Rational(12));
  EXPECT_EQ(v.proc, 1u);
  EXPECT_EQ(v.symbol, Symbol("1"));
  EXPECT_EQ(v.timers, std::vector<Timer>{Timer("U")});
}

TEST(Monitor, JoinBeforeChildCompletes) {
  const auto r = monitor_trace(s1(), trace({{0, "a", 0}, {0, "c", 5}}));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::JoinBeforeChildComplete);
  EXPECT_EQ(r.violations[0].at, Rational(5));
}

TEST(Monitor, FreshMonitorIsEmpty) {
  const Monitor m(s1());
  const auto r = m.finish();
  EXPECT_EQ(r.cycles, 0u);
  EXPECT_TRUE(r.clean());
  EXPECT_TRUE(r.cycle_durations.empty());
}

TEST(Monitor, LiveChildAtFinish) {
  Monitor m(s1());
  m.feed({0, Symbol("a"), 0});
  m.feed({1, Symbol("0"), 1});
  EXPECT_EQ(m.live_instances().size(), 1u);
  EXPECT_EQ(m.live_instances().at(1), ChildId("A"));
  const auto r = m.finish();
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::ChildIncomplete);
  EXPECT_TRUE(r.violations[0].symbol.empty());
}

TEST(Monitor, ParentGuardBreachNamesTimer) {
  const auto r = monitor_trace(s1(), trace({{0, "a", 0}, {1, "0", 1}, {1, "1", 5}, {0, "c", 50}}));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::GuardViolated);
  EXPECT_EQ(r.violations[0].timers, std::vector<Timer>{Timer("T")});
  // monitoring resumes after the breach
  EXPECT_EQ(r.cycles, 1u);
}

TEST(Monitor, UnexpectedSymbol) {
  const auto r = monitor_trace(s1(), trace({{0, "c", 1}}));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::NoTransition);
}

TEST(Monitor, EventsMustAdvance) {
  Monitor m(s1());
  m.feed({0, Symbol("a"), 3});
  try {
    m.feed({1, Symbol("0"), 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfOrderEvent);
  }
}

TEST(Monitor, Deterministic) {
  const auto t = trace({{0, "a", 0}, {1, "0", 1}, {1, "1", 12}, {0, "c", 60}, {0, "b", 61}, {0, "a", 62}});
  EXPECT_EQ(monitor_trace(s1(), t), monitor_trace(s1(), t));
}

TEST(Monitor, MatrixMultiplyCyclesStayUnderBound) {
  const Pts s = fixtures::load("mm.pts").system("MM");
  auto profile = DelayProfile::from_bounds(s, Rational(99, 100));
  const auto t = generate(s, profile, 3);
  const auto r = monitor_trace(s, t);
  EXPECT_TRUE(r.clean());
  EXPECT_EQ(r.cycles, 3u);
  const auto bound = cycle_bound(s);
  ASSERT_TRUE(bound.bounded);
  for (const auto& d : r.cycle_durations) EXPECT_LT(d, bound.value);
}

TEST(Trace, CsvRoundTrip) {
  const auto t = trace({{0, "a", 0}, {2, "r1", Rational(1, 8)}, {0, "b", Rational(7, 3)}});
  const std::string csv = format_trace(t);
  EXPECT_EQ(csv.rfind("proc,symbol,time\n", 0), 0u);
  EXPECT_EQ(parse_trace(csv), t);
  EXPECT_EQ(parse_trace("# note\n0,a,0\n\n1,b,0.5\n"), trace({{0, "a", 0}, {1, "b", Rational(1, 2)}}));
}

TEST(Trace, CsvErrors) {
  EXPECT_THROW((void)parse_trace("0,a\n"), SyntaxError);
  EXPECT_THROW((void)parse_trace("x,a,1\n"), SyntaxError);
  EXPECT_THROW((void)parse_trace("0,a,zz\n"), SyntaxError);
  try {
    (void)parse_trace("0,a,1\n0,b,nope\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}
