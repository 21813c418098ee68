#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hat/formula.hpp"
#include "hat/lht.hpp"
#include "hat/prefix.hpp"

namespace hat::test {

// Every formula over `atoms` with & | => ~ of size at most max_size.
std::vector<FormulaPtr> formulas_up_to(int max_size, const std::vector<std::string>& atoms);

// `count` formulas of uniformly drawn size 1..max_size over `atoms`.
std::vector<FormulaPtr> random_formulas(int count, int max_size, const std::vector<std::string>& atoms,
                                        std::uint64_t seed);

// Exhaustive size <= 7 over {p,q} followed by 10,000 random size <= 12 over
// {p,q,r}.
const std::vector<FormulaPtr>& prop_corpus();

// Checks an LHT proof of |- f against the rules of the calculus. Returns an
// empty string for a correct proof, otherwise what is wrong with it.
std::string check_lht_proof(const FormulaPtr& f, const std::vector<ProofNode>& proof);

// All ground solutions with every variable at most prefix_bound(eqs) long,
// by enumerating the candidate strings of each variable.
std::set<PrefixSolution> brute_force_solutions(const std::vector<PrefixEquation>& eqs);

// Constraint sets over at most three symbols with strings of length <= 4:
// every single equation, then random pairs with few constant occurrences.
std::vector<std::vector<PrefixEquation>> prefix_systems(int pairs, std::uint64_t seed);

}  // namespace hat::test
