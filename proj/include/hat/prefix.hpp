#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hat/verdict.hpp"

namespace hat {

// Prefix symbol: a variable or a constant, both identified by an integer.
struct PSym {
  bool var = false;
  int id = 0;

  auto operator<=>(const PSym&) const = default;
};

using PString = std::vector<PSym>;

struct PrefixEquation {
  PString lhs;
  PString rhs;
};

// Ground solution: every variable of the equations mapped to a string of
// constants.
using PrefixSolution = std::map<int, PString>;

PString apply_prefix(const PrefixSolution& s, const PString& p);
bool satisfies(const PrefixSolution& s, const std::vector<PrefixEquation>& eqs);

// Number of constant occurrences in the system. Solutions are searched with
// every variable no longer than this.
int prefix_bound(const std::vector<PrefixEquation>& eqs);

// First solution found, variables left open mapped to the empty string.
std::optional<PrefixSolution> prefix_unify(const std::vector<PrefixEquation>& eqs,
                                           Deadline* deadline = nullptr);

// All ground solutions over the constants of the system whose variables are
// no longer than prefix_bound(eqs).
std::set<PrefixSolution> prefix_unify_all(const std::vector<PrefixEquation>& eqs);

std::string to_string(const PString& p);

}  // namespace hat
