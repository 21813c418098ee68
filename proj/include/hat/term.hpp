#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace hat {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// A first-order term: a variable (integer identity, optional display name)
// or a function application. Constants are applications with no arguments.
struct Term {
  enum class Kind { Var, Fun };

  Kind kind = Kind::Fun;
  int var = -1;
  std::string name;
  std::vector<TermPtr> args;

  bool is_var() const { return kind == Kind::Var; }
};

TermPtr make_var(int id, std::string name = {});
TermPtr make_fun(std::string symbol, std::vector<TermPtr> args = {});

// Hands out variable identifiers above a floor; one pool per proof attempt.
class VarPool {
 public:
  explicit VarPool(int next = 0) : next_(next) {}
  TermPtr fresh(const std::string& name = {});
  int next_id() const { return next_; }

 private:
  int next_;
};

// Variable bindings with an undo trail. Bindings are never overwritten; a
// search backtracks by calling undo() with a previously taken mark().
class Bindings {
 public:
  using Mark = std::size_t;

  Mark mark() const { return trail_.size(); }
  void undo(Mark m);
  void bind(int var, TermPtr value);
  const TermPtr& lookup(int var) const;

  // Follows variable bindings at the root only.
  TermPtr deref(TermPtr t) const;
  // Applies the bindings everywhere, producing a term without bound vars.
  TermPtr resolve(const TermPtr& t) const;

 private:
  std::vector<TermPtr> slots_;
  std::vector<int> trail_;
};

bool occurs_in(int var, const TermPtr& t, const Bindings& b);

// Syntactic identity after dereferencing (Prolog ==).
bool identical(const TermPtr& a, const TermPtr& b, const Bindings& bnd);
bool identical_args(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b,
                    const Bindings& bnd);

// Unification with occurs check. On failure every binding made by the call
// is undone, so the caller only needs a mark for success paths.
bool unify(const TermPtr& a, const TermPtr& b, Bindings& bnd);
bool unify_args(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b, Bindings& bnd);

// Plain map view of a substitution, for APIs that return one.
struct Substitution {
  std::map<int, TermPtr> map;

  TermPtr apply(const TermPtr& t) const;
  bool contains(int var) const { return map.count(var) != 0; }
};

std::optional<Substitution> unify_occurs(const TermPtr& a, const TermPtr& b,
                                         const Substitution& sigma = {});

bool term_equal(const TermPtr& a, const TermPtr& b);
void collect_vars(const TermPtr& t, std::set<int>& out);
int max_var_id(const TermPtr& t);

// Renames every variable not in `frozen` to a fresh one, consistently.
TermPtr fresh_copy(const TermPtr& t, const std::set<int>& frozen, VarPool& pool,
                   std::map<int, TermPtr>& renaming);

inline constexpr const char* kSkolemPrefix = "$sk";

// Skolem term for an eigenvariable rule. Same site and arguments give the
// same term; the symbol lives in a namespace the parsers never produce.
TermPtr skolem_term(const std::string& site, const std::vector<TermPtr>& free_vars);
bool is_skolem_symbol(const std::string& symbol);

std::string to_string(const TermPtr& t);
std::ostream& operator<<(std::ostream& os, const TermPtr& t);

}  // namespace hat
