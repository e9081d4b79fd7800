#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ptv/pts.hpp"

namespace ptv {

/// proc 0 is the parent; proc n > 0 addresses child instance n.
struct TraceEvent {
  unsigned proc = 0;
  Symbol symbol;
  Timestamp time;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

enum class ViolationKind { GuardViolated, NoTransition, JoinBeforeChildComplete, ChildGuardViolated, ChildIncomplete };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  Timestamp at;
  unsigned proc = 0;
  Symbol symbol;              // empty for ChildIncomplete
  std::vector<Timer> timers;  // failing guard atoms, if any
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct MonitorReport {
  std::size_t cycles = 0;  // returns of the parent to its start state
  std::vector<Rational> cycle_durations;
  std::size_t accepting_visits = 0;
  std::vector<Violation> violations;

  bool clean() const { return violations.empty(); }
  friend bool operator==(const MonitorReport&, const MonitorReport&) = default;
};

/// Online checker for a merged, time-ordered event stream. Violations are
/// recorded and monitoring continues from the configurations reached by
/// ignoring the failed guard.
class Monitor {
 public:
  explicit Monitor(Pts system);

  /// Throws Error(OutOfOrderEvent) unless e.time is later than every earlier event.
  void feed(const TraceEvent& e);

  /// Report including ChildIncomplete for instances still running.
  MonitorReport finish() const;

  const std::vector<Violation>& violations() const { return report_.violations; }
  const std::set<Configuration>& parent_configurations() const { return parent_; }
  /// Live instance ids and the child each one runs.
  std::map<unsigned, ChildId> live_instances() const;

 private:
  struct Instance {
    ChildId child;
    std::set<Configuration> configs;
    std::optional<Timestamp> last;
    bool complete = false;
  };

  void feed_parent(const TraceEvent& e);
  void feed_child(const TraceEvent& e);
  void add(ViolationKind kind, const TraceEvent& e, std::vector<Timer> timers, std::string detail);

  Pts sys_;
  Adjacency parent_adj_;
  std::map<ChildId, Adjacency> child_adj_;
  std::set<Configuration> parent_;
  std::optional<Timestamp> parent_last_;
  std::optional<Timestamp> last_;
  std::optional<Timestamp> cycle_start_;
  std::map<unsigned, Instance> live_;
  MonitorReport report_;
};

MonitorReport monitor_trace(const Pts& system, const std::vector<TraceEvent>& trace);

/// `proc,symbol,time` per line; a `proc,symbol,time` header line is optional.
/// Throws SyntaxError.
std::vector<TraceEvent> parse_trace(std::string_view csv);

std::string format_trace(const std::vector<TraceEvent>& trace);

}  // namespace ptv
