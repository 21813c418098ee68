#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hat/formula.hpp"
#include "hat/verdict.hpp"

namespace hat {

// Propositional two-world interpretation, here ⊆ there.
struct HTInterpretation {
  std::set<std::string> here;
  std::set<std::string> there;
};

enum class World { Here, There };

// Throws std::invalid_argument on quantifiers or atoms with arguments.
bool eval_ht(const FormulaPtr& f, const HTInterpretation& i, World w);

struct HTCheck {
  bool valid = true;
  // First falsifying interpretation in enumeration order (atoms sorted by
  // name, each absent / there-only / in both worlds).
  std::optional<HTInterpretation> countermodel;
};

HTCheck ht_check_prop(const FormulaPtr& f);
bool ht_valid_prop(const FormulaPtr& f);
bool classical_valid_prop(const FormulaPtr& f);

std::string to_string(const HTInterpretation& i);

// Finite first-order HT countermodel: constant domain {0..n-1}, rigid
// functions, and per ground atom a value absent / there-only / both.
struct FoCountermodel {
  int domain_size = 0;
  std::map<std::string, std::vector<int>> functions;  // value table, args in base n
  std::map<std::string, std::vector<int>> predicates; // 0 absent, 1 there-only, 2 both
};

struct FoSearchConfig {
  int max_domain = 3;
  // Upper bound on interpretations examined over all domain sizes.
  long budget = 200000;
};

// Searches small finite models for one that falsifies the closed formula f
// at the here world. A result is a genuine HT countermodel, so f is not
// HT-valid; no result means nothing.
std::optional<FoCountermodel> find_fo_countermodel(const FormulaPtr& f, const FoSearchConfig& cfg,
                                                   Deadline& deadline);

}  // namespace hat
