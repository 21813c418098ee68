#include "hat/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hat {

namespace {

FormulaPtr make(Op op, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr make_quant(Op op, TermPtr var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->var = std::move(var);
  f->lhs = std::move(body);
  return f;
}

}  // namespace

FormulaPtr atom(std::string pred, std::vector<TermPtr> args) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Atom;
  f->pred = std::move(pred);
  f->args = std::move(args);
  return f;
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return make(Op::And, std::move(a), std::move(b)); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return make(Op::Or, std::move(a), std::move(b)); }
FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return make(Op::Imp, std::move(a), std::move(b)); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return make(Op::Iff, std::move(a), std::move(b)); }
FormulaPtr neg(FormulaPtr a) { return make(Op::Not, std::move(a), nullptr); }
FormulaPtr forall(TermPtr var, FormulaPtr body) { return make_quant(Op::Forall, std::move(var), std::move(body)); }
FormulaPtr exists(TermPtr var, FormulaPtr body) { return make_quant(Op::Exists, std::move(var), std::move(body)); }
FormulaPtr binary(Op op, FormulaPtr a, FormulaPtr b) { return make(op, std::move(a), std::move(b)); }

FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
  FormulaPtr out = fs.at(0);
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}

namespace {

TermPtr subst_term(const TermPtr& t, int var, const TermPtr& by) {
  if (t->is_var()) return t->var == var ? by : t;
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(subst_term(a, var, by));
    changed |= args.back() != a;
  }
  return changed ? make_fun(t->name, std::move(args)) : t;
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, int var, const TermPtr& t) {
  switch (f->op) {
    case Op::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      bool changed = false;
      for (const auto& a : f->args) {
        args.push_back(subst_term(a, var, t));
        changed |= args.back() != a;
      }
      return changed ? atom(f->pred, std::move(args)) : f;
    }
    case Op::Not: {
      auto a = substitute(f->lhs, var, t);
      return a == f->lhs ? f : neg(a);
    }
    case Op::Forall:
    case Op::Exists: {
      if (f->var->var == var) return f;
      auto body = substitute(f->lhs, var, t);
      return body == f->lhs ? f : make_quant(f->op, f->var, body);
    }
    default: {
      auto a = substitute(f->lhs, var, t);
      auto b = substitute(f->rhs, var, t);
      return (a == f->lhs && b == f->rhs) ? f : make(f->op, a, b);
    }
  }
}

namespace {

void free_vars_rec(const FormulaPtr& f, std::vector<int>& bound, std::vector<TermPtr>& out,
                   std::set<int>& seen) {
  std::function<void(const TermPtr&)> visit = [&](const TermPtr& t) {
    if (t->is_var()) {
      if (std::find(bound.begin(), bound.end(), t->var) == bound.end() && seen.insert(t->var).second)
        out.push_back(t);
      return;
    }
    for (const auto& a : t->args) visit(a);
  };
  switch (f->op) {
    case Op::Atom:
      for (const auto& a : f->args) visit(a);
      break;
    case Op::Not:
      free_vars_rec(f->lhs, bound, out, seen);
      break;
    case Op::Forall:
    case Op::Exists:
      bound.push_back(f->var->var);
      free_vars_rec(f->lhs, bound, out, seen);
      bound.pop_back();
      break;
    default:
      free_vars_rec(f->lhs, bound, out, seen);
      free_vars_rec(f->rhs, bound, out, seen);
  }
}

}  // namespace

std::vector<TermPtr> free_var_terms(const FormulaPtr& f) {
  std::vector<int> bound;
  std::vector<TermPtr> out;
  std::set<int> seen;
  free_vars_rec(f, bound, out, seen);
  return out;
}

std::set<int> free_vars(const FormulaPtr& f) {
  std::set<int> out;
  for (const auto& t : free_var_terms(f)) out.insert(t->var);
  return out;
}

int formula_size(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Atom: return 1;
    case Op::Not:
    case Op::Forall:
    case Op::Exists: return 1 + formula_size(f->lhs);
    default: return 1 + formula_size(f->lhs) + formula_size(f->rhs);
  }
}

int max_var_id(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Atom: {
      int m = -1;
      for (const auto& a : f->args) m = std::max(m, max_var_id(a));
      return m;
    }
    case Op::Not: return max_var_id(f->lhs);
    case Op::Forall:
    case Op::Exists: return std::max(f->var->var, max_var_id(f->lhs));
    default: return std::max(max_var_id(f->lhs), max_var_id(f->rhs));
  }
}

namespace {

FormulaPtr rectify_rec(const FormulaPtr& f, std::map<int, TermPtr>& env, std::set<int>& used,
                       VarPool& pool) {
  switch (f->op) {
    case Op::Atom: {
      std::vector<TermPtr> args;
      for (const auto& a : f->args) {
        std::function<TermPtr(const TermPtr&)> ren = [&](const TermPtr& t) -> TermPtr {
          if (t->is_var()) {
            auto it = env.find(t->var);
            return it == env.end() ? t : it->second;
          }
          if (t->args.empty()) return t;
          std::vector<TermPtr> as;
          for (const auto& x : t->args) as.push_back(ren(x));
          return make_fun(t->name, std::move(as));
        };
        args.push_back(ren(a));
      }
      return atom(f->pred, std::move(args));
    }
    case Op::Not: return neg(rectify_rec(f->lhs, env, used, pool));
    case Op::Forall:
    case Op::Exists: {
      int old = f->var->var;
      TermPtr nv = f->var;
      if (!used.insert(old).second) nv = pool.fresh(f->var->name);
      used.insert(nv->var);
      auto saved = env.find(old) == env.end() ? TermPtr{} : env[old];
      env[old] = nv;
      auto body = rectify_rec(f->lhs, env, used, pool);
      if (saved)
        env[old] = saved;
      else
        env.erase(old);
      return make_quant(f->op, nv, body);
    }
    default:
      return make(f->op, rectify_rec(f->lhs, env, used, pool), rectify_rec(f->rhs, env, used, pool));
  }
}

}  // namespace

FormulaPtr rectify(const FormulaPtr& f, VarPool& pool) {
  std::map<int, TermPtr> env;
  std::set<int> used = free_vars(f);
  return rectify_rec(f, env, used, pool);
}

FormulaPtr resolve(const FormulaPtr& f, const Bindings& b) {
  switch (f->op) {
    case Op::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(b.resolve(a));
      return atom(f->pred, std::move(args));
    }
    case Op::Not: return neg(resolve(f->lhs, b));
    case Op::Forall:
    case Op::Exists: return make_quant(f->op, f->var, resolve(f->lhs, b));
    default: return make(f->op, resolve(f->lhs, b), resolve(f->rhs, b));
  }
}

bool identical(const FormulaPtr& a, const FormulaPtr& b, const Bindings& bnd) {
  if (a == b) return true;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Atom: return a->pred == b->pred && identical_args(a->args, b->args, bnd);
    case Op::Not: return identical(a->lhs, b->lhs, bnd);
    case Op::Forall:
    case Op::Exists: return a->var->var == b->var->var && identical(a->lhs, b->lhs, bnd);
    default: return identical(a->lhs, b->lhs, bnd) && identical(a->rhs, b->rhs, bnd);
  }
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  static const Bindings empty;
  return identical(a, b, empty);
}

namespace {

bool alpha_term(const TermPtr& a, const TermPtr& b, std::map<int, int>& l2r, std::map<int, int>& r2l) {
  if (a->kind != b->kind) return false;
  if (a->is_var()) {
    auto i = l2r.find(a->var);
    auto j = r2l.find(b->var);
    if (i == l2r.end() && j == r2l.end()) return a->var == b->var;
    return i != l2r.end() && j != r2l.end() && i->second == b->var && j->second == a->var;
  }
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t k = 0; k < a->args.size(); ++k)
    if (!alpha_term(a->args[k], b->args[k], l2r, r2l)) return false;
  return true;
}

bool alpha_rec(const FormulaPtr& a, const FormulaPtr& b, std::map<int, int>& l2r, std::map<int, int>& r2l) {
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Atom:
      if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
      for (std::size_t k = 0; k < a->args.size(); ++k)
        if (!alpha_term(a->args[k], b->args[k], l2r, r2l)) return false;
      return true;
    case Op::Not: return alpha_rec(a->lhs, b->lhs, l2r, r2l);
    case Op::Forall:
    case Op::Exists: {
      auto sl = l2r;
      auto sr = r2l;
      l2r[a->var->var] = b->var->var;
      r2l[b->var->var] = a->var->var;
      bool ok = alpha_rec(a->lhs, b->lhs, l2r, r2l);
      l2r = std::move(sl);
      r2l = std::move(sr);
      return ok;
    }
    default: return alpha_rec(a->lhs, b->lhs, l2r, r2l) && alpha_rec(a->rhs, b->rhs, l2r, r2l);
  }
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  std::map<int, int> l2r, r2l;
  return alpha_rec(a, b, l2r, r2l);
}

bool unify_literals(const FormulaPtr& a, const FormulaPtr& b, Bindings& bnd) {
  const Formula* x = a.get();
  const Formula* y = b.get();
  if (x->op == Op::Not) {
    if (y->op != Op::Not) return false;
    x = x->lhs.get();
    y = y->lhs.get();
  }
  if (x->op != Op::Atom || y->op != Op::Atom || x->pred != y->pred) return false;
  return unify_args(x->args, y->args, bnd);
}

bool is_propositional(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Atom: return f->args.empty();
    case Op::Forall:
    case Op::Exists: return false;
    case Op::Not: return is_propositional(f->lhs);
    default: return is_propositional(f->lhs) && is_propositional(f->rhs);
  }
}

namespace {

void walk_atoms(const FormulaPtr& f, const std::function<void(const Formula&)>& fn) {
  switch (f->op) {
    case Op::Atom: fn(*f); break;
    case Op::Not:
    case Op::Forall:
    case Op::Exists: walk_atoms(f->lhs, fn); break;
    default:
      walk_atoms(f->lhs, fn);
      walk_atoms(f->rhs, fn);
  }
}

}  // namespace

std::vector<std::pair<std::string, int>> predicates_of(const FormulaPtr& f) {
  std::vector<std::pair<std::string, int>> out;
  walk_atoms(f, [&](const Formula& a) {
    std::pair<std::string, int> key{a.pred, static_cast<int>(a.args.size())};
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
  });
  return out;
}

std::vector<std::pair<std::string, int>> functions_of(const FormulaPtr& f) {
  std::vector<std::pair<std::string, int>> out;
  std::function<void(const TermPtr&)> visit = [&](const TermPtr& t) {
    if (t->is_var()) return;
    std::pair<std::string, int> key{t->name, static_cast<int>(t->args.size())};
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
    for (const auto& a : t->args) visit(a);
  };
  walk_atoms(f, [&](const Formula& a) {
    for (const auto& t : a.args) visit(t);
  });
  return out;
}

void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
  walk_atoms(f, [&](const Formula& a) { out.insert(a.pred); });
}

namespace {

struct Printer {
  std::map<int, std::string> names;
  std::ostringstream os;

  void collect(const FormulaPtr& f, std::map<std::string, std::set<int>>& by_name) {
    std::function<void(const TermPtr&)> visit = [&](const TermPtr& t) {
      if (t->is_var()) {
        by_name[t->name].insert(t->var);
        return;
      }
      for (const auto& a : t->args) visit(a);
    };
    switch (f->op) {
      case Op::Atom:
        for (const auto& a : f->args) visit(a);
        break;
      case Op::Forall:
      case Op::Exists:
        visit(f->var);
        collect(f->lhs, by_name);
        break;
      case Op::Not: collect(f->lhs, by_name); break;
      default:
        collect(f->lhs, by_name);
        collect(f->rhs, by_name);
    }
  }

  void prepare(const FormulaPtr& f) {
    std::map<std::string, std::set<int>> by_name;
    collect(f, by_name);
    for (const auto& [name, ids] : by_name) {
      for (int id : ids) {
        if (name.empty())
          names[id] = "_G" + std::to_string(id);
        else if (ids.size() > 1)
          names[id] = name + "_" + std::to_string(id);
        else
          names[id] = name;
      }
    }
  }

  void term(const TermPtr& t) {
    if (t->is_var()) {
      auto it = names.find(t->var);
      os << (it != names.end() ? it->second : to_string(t));
      return;
    }
    os << t->name;
    if (t->args.empty()) return;
    os << '(';
    for (std::size_t i = 0; i < t->args.size(); ++i) {
      if (i) os << ',';
      term(t->args[i]);
    }
    os << ')';
  }

  void formula(const FormulaPtr& f) {
    switch (f->op) {
      case Op::Atom:
        if (f->pred == "=" && f->args.size() == 2) {
          term(f->args[0]);
          os << " = ";
          term(f->args[1]);
          return;
        }
        os << f->pred;
        if (!f->args.empty()) {
          os << '(';
          for (std::size_t i = 0; i < f->args.size(); ++i) {
            if (i) os << ',';
            term(f->args[i]);
          }
          os << ')';
        }
        return;
      case Op::Not:
        os << "~ ";
        formula(f->lhs);
        return;
      case Op::Forall:
      case Op::Exists:
        os << '(' << (f->op == Op::Forall ? "all " : "ex ");
        term(f->var);
        os << ": ";
        formula(f->lhs);
        os << ')';
        return;
      default: {
        const char* sym = f->op == Op::And ? " , " : f->op == Op::Or ? " ; " : f->op == Op::Imp ? " => " : " <=> ";
        os << '(';
        formula(f->lhs);
        os << sym;
        formula(f->rhs);
        os << ')';
      }
    }
  }
};

}  // namespace

std::string to_native(const FormulaPtr& f) {
  Printer p;
  p.prepare(f);
  p.formula(f);
  return p.os.str();
}

std::ostream& operator<<(std::ostream& os, const FormulaPtr& f) { return os << to_native(f); }

}  // namespace hat
