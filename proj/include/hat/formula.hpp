#pragma once

#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "hat/term.hpp"

namespace hat {

enum class Op { Atom, And, Or, Imp, Iff, Not, Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Quantifiers hold their bound variable as a Var
// term; after rectification every binder has its own variable id.
struct Formula {
  Op op = Op::Atom;
  std::string pred;             // Atom
  std::vector<TermPtr> args;    // Atom
  FormulaPtr lhs;               // binary left, Not operand, quantifier body
  FormulaPtr rhs;               // binary right
  TermPtr var;                  // quantifier variable

  bool is_atom() const { return op == Op::Atom; }
  bool is_quantifier() const { return op == Op::Forall || op == Op::Exists; }
  bool is_binary() const { return op == Op::And || op == Op::Or || op == Op::Imp || op == Op::Iff; }
  // Atom or negated atom.
  bool is_literal() const { return op == Op::Atom || (op == Op::Not && lhs->op == Op::Atom); }
};

FormulaPtr atom(std::string pred, std::vector<TermPtr> args = {});
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr imp(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr neg(FormulaPtr a);
FormulaPtr forall(TermPtr var, FormulaPtr body);
FormulaPtr exists(TermPtr var, FormulaPtr body);
FormulaPtr binary(Op op, FormulaPtr a, FormulaPtr b);

// Left-nested conjunction of a non-empty list.
FormulaPtr conj_all(const std::vector<FormulaPtr>& fs);

// Replaces free occurrences of variable `var` by `t`. Binders are never
// renamed, so `t` must not contain variables bound inside `f`.
FormulaPtr substitute(const FormulaPtr& f, int var, const TermPtr& t);

std::set<int> free_vars(const FormulaPtr& f);
// Free variables in order of first occurrence, as terms.
std::vector<TermPtr> free_var_terms(const FormulaPtr& f);
int formula_size(const FormulaPtr& f);
int max_var_id(const FormulaPtr& f);

// Renames binders apart so that every quantifier binds a distinct variable
// that also differs from every free variable.
FormulaPtr rectify(const FormulaPtr& f, VarPool& pool);

// Applies bindings to every term in the formula.
FormulaPtr resolve(const FormulaPtr& f, const Bindings& b);

// Prolog-style == on formulas: structural identity after dereferencing.
bool identical(const FormulaPtr& a, const FormulaPtr& b, const Bindings& bnd);
// Structural equality, no bindings, bound variables compared by id.
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
// Equality up to consistent renaming of bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

// Unifies two literals of the same shape (both atoms or both negated atoms).
bool unify_literals(const FormulaPtr& a, const FormulaPtr& b, Bindings& bnd);

bool is_propositional(const FormulaPtr& f);
// Predicate symbols with arities, in order of first occurrence.
std::vector<std::pair<std::string, int>> predicates_of(const FormulaPtr& f);
// Function symbols (incl. constants) with arities, in order of first occurrence.
std::vector<std::pair<std::string, int>> functions_of(const FormulaPtr& f);
void collect_atoms(const FormulaPtr& f, std::set<std::string>& out);

// Native syntax: `,` `;` `~` `=>` `<=>` `all X:` `ex X:`.
std::string to_native(const FormulaPtr& f);
std::ostream& operator<<(std::ostream& os, const FormulaPtr& f);

}  // namespace hat
