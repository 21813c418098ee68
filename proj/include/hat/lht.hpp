#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hat/formula.hpp"
#include "hat/oracle.hpp"
#include "hat/verdict.hpp"

namespace hat {

struct Sequent {
  std::vector<FormulaPtr> left;
  std::vector<FormulaPtr> right;
};

// Formulas a rule adds to one premise.
struct Delta {
  std::vector<FormulaPtr> left;
  std::vector<FormulaPtr> right;
};

enum class RuleKind { Single, Split, Iff, Eigen, FreeVar };

// One line of the LHT rule table (r1..r26). For quantifier rules the
// premise is filled in by instantiate(); `negated` says whether the
// principal formula is a negated quantifier.
struct RuleApplication {
  int number = 0;
  RuleKind kind = RuleKind::Single;
  std::vector<Delta> premises;
  bool negated = false;
};

inline constexpr int kAxiomRight = -1;  // G on both sides
inline constexpr int kAxiomLeft = -2;   // G and ~G on the left

// Rule number for (f, pol), 0 when f is a literal. pol 1 = left, 0 = right.
int rule_number(const FormulaPtr& f, int pol);
std::optional<RuleApplication> rule_lookup(const FormulaPtr& f, int pol);

// Premise for a quantifier rule: the body (negated if the principal was)
// with the bound variable replaced by `t`, plus the principal itself for
// free-variable rules.
Delta instantiate(const FormulaPtr& f, int pol, const TermPtr& t, bool keep_principal);

bool has_free_var_quantifier(const FormulaPtr& f);

// Preorder proof tree node. Leaves are axioms (rule < 0).
struct ProofNode {
  Sequent sequent;
  int rule = 0;
  bool principal_left = false;
  int principal = -1;  // index into the side, or the first formula for axioms
  int partner = -1;    // axioms: index of the matching formula
  int premises = 0;
  TermPtr witness;     // quantifier rules
};

struct LhtConfig {
  int initial_limit = 1;
  int max_limit = 1 << 20;
  bool countermodel = true;
  FoSearchConfig fo{3, 50000};
};

struct LhtResult {
  Status status = Status::GaveUp;
  Stats stats;
  std::vector<ProofNode> proof;               // Proved only, bindings applied
  std::optional<FoCountermodel> countermodel; // Refuted via a finite model
};

// Searches for a proof of the sequent under a fixed free-variable limit.
// Returns the proof or nothing; `hit_limit` reports whether the limit cut
// off any branch.
std::optional<std::vector<ProofNode>> prove_sequent(const Sequent& s, int var_limit, Deadline& deadline,
                                                    Stats& stats, bool& hit_limit);

LhtResult prove_lht(const FormulaPtr& f, const LhtConfig& cfg, Deadline& deadline);

std::string to_string(const std::vector<ProofNode>& proof);

}  // namespace hat
