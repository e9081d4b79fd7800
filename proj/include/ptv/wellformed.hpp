#pragma once

#include <string>
#include <vector>

#include "ptv/automaton.hpp"

namespace ptv {

struct WellFormedViolation {
  Timer timer;
  EdgePath witness;  // shortest path checking `timer` twice
};

struct WellFormedReport {
  std::vector<WellFormedViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// A timer may be guard-checked at most once along any path. Searches paths
/// between every pair of states; at most one violation per timer.
WellFormedReport check_well_formed(const Automaton& a);

}  // namespace ptv
