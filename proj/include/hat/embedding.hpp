#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hat/formula.hpp"

namespace hat {

// Predicate symbols with arities, in order of first occurrence.
using PredSignature = std::vector<std::pair<std::string, int>>;

PredSignature signature_of(const FormulaPtr& f);

// Closed instances of G ; (G => H) ; ~H for G in {P(x..), ~P(x..)} and
// H = P'(y..), skipping G = H up to renaming. `pool` supplies variables.
std::vector<FormulaPtr> hos_instances(const PredSignature& sig, VarPool& pool);
// ex x..: (G => all y..: G[x..\y..]) for every predicate of arity >= 1.
std::vector<FormulaPtr> sqht_instances(const PredSignature& sig, VarPool& pool);

// HOS instances followed by SQHT instances for the signature of f.
std::vector<FormulaPtr> ht_axioms(const FormulaPtr& f);

// (A1 & ... & Ak) => f, or f when there are no axioms.
FormulaPtr embed(const FormulaPtr& f);

}  // namespace hat
