#pragma once

#include <string>
#include <vector>

#include "hat/formula.hpp"
#include "hat/matrix.hpp"
#include "hat/prefix.hpp"
#include "hat/verdict.hpp"

namespace hat {

struct ConnConfig {
  bool regularity = true;
  // Run a pass with restricted backtracking before the complete pass.
  bool restricted_backtracking = true;
  // Check prefix unifiability after every connection, not only at the end.
  bool eager_prefix = true;
  double rb_share = 0.5;  // fraction of the time budget for the first pass
  int max_limit = 64;     // path-length limit of the last deepening round
  // Nested literal subproofs; each needs about 1 KiB of stack.
  int max_depth = 100000;
};

// A connection of the found proof, after applying the term substitution.
struct Connection {
  std::string pred;
  std::vector<TermPtr> args1, args2;
  PString prefix1, prefix2;
};

struct ConnResult {
  Status status = Status::GaveUp;
  Stats stats;
  std::vector<Connection> connections;
  PrefixSolution prefix_solution;
};

ConnResult prove_connection(const PrefixMatrix& m, const ConnConfig& cfg, Deadline& deadline);
ConnResult prove_connection(const FormulaPtr& f, const ConnConfig& cfg, Deadline& deadline);

}  // namespace hat
