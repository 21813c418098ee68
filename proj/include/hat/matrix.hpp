#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hat/formula.hpp"

namespace hat {

// Prefixed non-clausal matrix in arena form. Prefix symbols are terms:
// a Var is a prefix variable, a Fun is a prefix constant whose arguments
// are the free term and prefix variables it depends on.
struct MatrixNode {
  enum class Kind { Literal, Clause, Matrix };

  Kind kind = Kind::Matrix;
  int parent = -1;
  std::vector<int> children;  // Clause: literals and matrices; Matrix: clauses

  // Literal
  std::string pred;
  std::vector<TermPtr> args;
  int polarity = 0;
  std::vector<TermPtr> prefix;

  bool gamma = false;  // clause that owns a quantifier's variable copies
};

struct SkolemInfo {
  std::vector<TermPtr> args;    // as built: term and prefix variables
  std::vector<TermPtr> prefix;  // prefix of the world the term lives in
};

struct GammaInfo {
  int var = -1;                 // term variable x*
  std::vector<TermPtr> prefix;  // world where it is instantiated
};

struct PrefixMatrix {
  std::vector<MatrixNode> nodes;  // nodes[0] is the root matrix
  std::map<std::string, SkolemInfo> skolems;
  std::vector<GammaInfo> gammas;
  std::set<int> prefix_vars;
  int next_var = 0;

  const MatrixNode& operator[](int i) const { return nodes[i]; }
  int literal_count() const;
};

// M(F^0 : empty prefix). Throws std::invalid_argument if f has free variables.
PrefixMatrix build_matrix(const FormulaPtr& f);

// e.g. {{p^1:a1 V1}, {p^0:a1 a2}}
std::string to_string(const PrefixMatrix& m);
std::string prefix_to_string(const std::vector<TermPtr>& prefix);

}  // namespace hat
