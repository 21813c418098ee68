#include "hat/term.hpp"

#include <sstream>

namespace hat {

TermPtr make_var(int id, std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->var = id;
  t->name = std::move(name);
  return t;
}

TermPtr make_fun(std::string symbol, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Fun;
  t->name = std::move(symbol);
  t->args = std::move(args);
  return t;
}

TermPtr VarPool::fresh(const std::string& name) { return make_var(next_++, name); }

void Bindings::undo(Mark m) {
  while (trail_.size() > m) {
    slots_[trail_.back()].reset();
    trail_.pop_back();
  }
}

void Bindings::bind(int var, TermPtr value) {
  if (static_cast<std::size_t>(var) >= slots_.size()) slots_.resize(var + 64);
  slots_[var] = std::move(value);
  trail_.push_back(var);
}

const TermPtr& Bindings::lookup(int var) const {
  static const TermPtr none;
  if (var < 0 || static_cast<std::size_t>(var) >= slots_.size()) return none;
  return slots_[var];
}

TermPtr Bindings::deref(TermPtr t) const {
  while (t->is_var()) {
    const TermPtr& v = lookup(t->var);
    if (!v) break;
    t = v;
  }
  return t;
}

TermPtr Bindings::resolve(const TermPtr& t) const {
  TermPtr d = deref(t);
  if (d->is_var() || d->args.empty()) return d;
  std::vector<TermPtr> args;
  args.reserve(d->args.size());
  bool changed = false;
  for (const auto& a : d->args) {
    args.push_back(resolve(a));
    changed |= args.back() != a;
  }
  if (!changed) return d;
  return make_fun(d->name, std::move(args));
}

bool occurs_in(int var, const TermPtr& t, const Bindings& b) {
  TermPtr d = b.deref(t);
  if (d->is_var()) return d->var == var;
  for (const auto& a : d->args)
    if (occurs_in(var, a, b)) return true;
  return false;
}

bool identical(const TermPtr& a, const TermPtr& b, const Bindings& bnd) {
  TermPtr x = bnd.deref(a);
  TermPtr y = bnd.deref(b);
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  if (x->is_var()) return x->var == y->var;
  return x->name == y->name && identical_args(x->args, y->args, bnd);
}

bool identical_args(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b,
                    const Bindings& bnd) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!identical(a[i], b[i], bnd)) return false;
  return true;
}

namespace {

bool unify_rec(const TermPtr& a, const TermPtr& b, Bindings& bnd) {
  TermPtr x = bnd.deref(a);
  TermPtr y = bnd.deref(b);
  if (x == y) return true;
  if (x->is_var()) {
    if (y->is_var() && y->var == x->var) return true;
    if (occurs_in(x->var, y, bnd)) return false;
    bnd.bind(x->var, y);
    return true;
  }
  if (y->is_var()) {
    if (occurs_in(y->var, x, bnd)) return false;
    bnd.bind(y->var, x);
    return true;
  }
  if (x->name != y->name || x->args.size() != y->args.size()) return false;
  for (std::size_t i = 0; i < x->args.size(); ++i)
    if (!unify_rec(x->args[i], y->args[i], bnd)) return false;
  return true;
}

}  // namespace

bool unify(const TermPtr& a, const TermPtr& b, Bindings& bnd) {
  auto m = bnd.mark();
  if (unify_rec(a, b, bnd)) return true;
  bnd.undo(m);
  return false;
}

bool unify_args(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b, Bindings& bnd) {
  if (a.size() != b.size()) return false;
  auto m = bnd.mark();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!unify_rec(a[i], b[i], bnd)) {
      bnd.undo(m);
      return false;
    }
  }
  return true;
}

TermPtr Substitution::apply(const TermPtr& t) const {
  if (t->is_var()) {
    auto it = map.find(t->var);
    return it == map.end() ? t : apply(it->second);
  }
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(apply(a));
  return make_fun(t->name, std::move(args));
}

std::optional<Substitution> unify_occurs(const TermPtr& a, const TermPtr& b,
                                         const Substitution& sigma) {
  Bindings bnd;
  for (const auto& [v, t] : sigma.map) bnd.bind(v, t);
  if (!unify(a, b, bnd)) return std::nullopt;
  Substitution out = sigma;
  std::set<int> vars;
  collect_vars(a, vars);
  collect_vars(b, vars);
  for (const auto& [v, t] : sigma.map) collect_vars(t, vars);
  for (int v : vars) {
    if (bnd.lookup(v) && !sigma.contains(v)) out.map[v] = bnd.lookup(v);
  }
  return out;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  static const Bindings empty;
  return identical(a, b, empty);
}

void collect_vars(const TermPtr& t, std::set<int>& out) {
  if (t->is_var()) {
    out.insert(t->var);
    return;
  }
  for (const auto& a : t->args) collect_vars(a, out);
}

int max_var_id(const TermPtr& t) {
  if (t->is_var()) return t->var;
  int m = -1;
  for (const auto& a : t->args) m = std::max(m, max_var_id(a));
  return m;
}

TermPtr fresh_copy(const TermPtr& t, const std::set<int>& frozen, VarPool& pool,
                   std::map<int, TermPtr>& renaming) {
  if (t->is_var()) {
    if (frozen.count(t->var)) return t;
    auto it = renaming.find(t->var);
    if (it != renaming.end()) return it->second;
    auto v = pool.fresh(t->name);
    renaming.emplace(t->var, v);
    return v;
  }
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(fresh_copy(a, frozen, pool, renaming));
  return make_fun(t->name, std::move(args));
}

TermPtr skolem_term(const std::string& site, const std::vector<TermPtr>& free_vars) {
  return make_fun(std::string(kSkolemPrefix) + "_" + site, free_vars);
}

bool is_skolem_symbol(const std::string& symbol) { return symbol.rfind(kSkolemPrefix, 0) == 0; }

namespace {

void print(std::ostream& os, const TermPtr& t) {
  if (t->is_var()) {
    if (t->name.empty())
      os << "_G" << t->var;
    else
      os << t->name;
    return;
  }
  os << t->name;
  if (t->args.empty()) return;
  os << '(';
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    if (i) os << ',';
    print(os, t->args[i]);
  }
  os << ')';
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  print(os, t);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TermPtr& t) {
  print(os, t);
  return os;
}

}  // namespace hat
