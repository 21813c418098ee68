#pragma once

#include "hat/formula.hpp"
#include "hat/verdict.hpp"

namespace hat {

struct LjConfig {
  int initial_limit = 1;
  int max_limit = 1 << 20;
  // Nested subproofs. Deeper searches are cut, which also bounds the time
  // spent unwinding after a timeout.
  int max_depth = 50000;
};

struct LjResult {
  Status status = Status::GaveUp;
  Stats stats;
};

// Single-succedent intuitionistic sequent search with free variables and
// Skolem terms, iteratively deepened on the free variables per branch.
LjResult prove_lj(const FormulaPtr& f, const LjConfig& cfg, Deadline& deadline);

}  // namespace hat
