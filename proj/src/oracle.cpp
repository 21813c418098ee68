#include "hat/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hat {

namespace {

bool holds(const FormulaPtr& f, const HTInterpretation& i, World w) {
  switch (f->op) {
    case Op::Atom:
      if (!f->args.empty()) throw std::invalid_argument("oracle: atom with arguments");
      return (w == World::Here ? i.here : i.there).count(f->pred) != 0;
    case Op::And: return holds(f->lhs, i, w) && holds(f->rhs, i, w);
    case Op::Or: return holds(f->lhs, i, w) || holds(f->rhs, i, w);
    case Op::Imp:
      if (w == World::There) return !holds(f->lhs, i, w) || holds(f->rhs, i, w);
      return (!holds(f->lhs, i, World::Here) || holds(f->rhs, i, World::Here)) &&
             (!holds(f->lhs, i, World::There) || holds(f->rhs, i, World::There));
    case Op::Iff:
      return holds(imp(f->lhs, f->rhs), i, w) && holds(imp(f->rhs, f->lhs), i, w);
    case Op::Not:
      // G -> falsum: G must fail at every world above w.
      return !holds(f->lhs, i, World::There) && (w == World::There || !holds(f->lhs, i, World::Here));
    default: throw std::invalid_argument("oracle: quantifier in propositional check");
  }
}

std::vector<std::string> sorted_atoms(const FormulaPtr& f) {
  if (!is_propositional(f)) throw std::invalid_argument("oracle: formula is not propositional");
  std::set<std::string> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

}  // namespace

bool eval_ht(const FormulaPtr& f, const HTInterpretation& i, World w) { return holds(f, i, w); }

HTCheck ht_check_prop(const FormulaPtr& f) {
  auto atoms = sorted_atoms(f);
  const std::size_t n = atoms.size();
  std::vector<int> val(n, 0);
  HTCheck out;
  for (;;) {
    HTInterpretation i;
    for (std::size_t k = 0; k < n; ++k) {
      if (val[k] >= 1) i.there.insert(atoms[k]);
      if (val[k] == 2) i.here.insert(atoms[k]);
    }
    if (!holds(f, i, World::Here)) {
      out.valid = false;
      out.countermodel = std::move(i);
      return out;
    }
    // Odometer with the last atom varying fastest.
    std::size_t k = n;
    while (k > 0 && val[k - 1] == 2) val[--k] = 0;
    if (k == 0) return out;
    ++val[k - 1];
  }
}

bool ht_valid_prop(const FormulaPtr& f) { return ht_check_prop(f).valid; }

bool classical_valid_prop(const FormulaPtr& f) {
  auto atoms = sorted_atoms(f);
  const std::size_t n = atoms.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    HTInterpretation i;
    for (std::size_t k = 0; k < n; ++k)
      if (bits >> k & 1) i.there.insert(atoms[k]);
    i.here = i.there;
    if (!holds(f, i, World::There)) return false;
  }
  return true;
}

std::string to_string(const HTInterpretation& i) {
  std::ostringstream os;
  auto set = [&](const std::set<std::string>& s) {
    os << '{';
    bool first = true;
    for (const auto& a : s) {
      if (!first) os << ',';
      os << a;
      first = false;
    }
    os << '}';
  };
  os << "H=";
  set(i.here);
  os << " T=";
  set(i.there);
  return os.str();
}

namespace {

struct FoModel {
  int n = 1;
  std::map<std::string, std::size_t> fun_base, pred_base;
  std::vector<int> fun_table;   // concatenated value tables
  std::vector<int> pred_table;  // concatenated atom values
  std::vector<int> env;         // variable id -> element

  int eval_term(const TermPtr& t) const {
    if (t->is_var()) return env.at(t->var);
    std::size_t code = 0;
    for (const auto& a : t->args) code = code * n + eval_term(a);
    return fun_table[fun_base.at(t->name) + code];
  }

  // World::There is value >= 1, World::Here is value 2.
  bool holds(const FormulaPtr& f, World w) {
    switch (f->op) {
      case Op::Atom: {
        std::size_t code = 0;
        for (const auto& a : f->args) code = code * n + eval_term(a);
        int v = pred_table[pred_base.at(f->pred) + code];
        return w == World::There ? v >= 1 : v == 2;
      }
      case Op::And: return holds(f->lhs, w) && holds(f->rhs, w);
      case Op::Or: return holds(f->lhs, w) || holds(f->rhs, w);
      case Op::Imp:
        if (w == World::There) return !holds(f->lhs, w) || holds(f->rhs, w);
        return (!holds(f->lhs, World::Here) || holds(f->rhs, World::Here)) &&
               (!holds(f->lhs, World::There) || holds(f->rhs, World::There));
      case Op::Iff:
        if (w == World::There) return holds(f->lhs, w) == holds(f->rhs, w);
        return holds(f->lhs, World::Here) == holds(f->rhs, World::Here) &&
               holds(f->lhs, World::There) == holds(f->rhs, World::There);
      case Op::Not:
        return !holds(f->lhs, World::There) && (w == World::There || !holds(f->lhs, World::Here));
      case Op::Forall:
      case Op::Exists: {
        // Constant domain: a universal at here only needs the here instances,
        // the there instances follow by persistence.
        const bool all = f->op == Op::Forall;
        int& slot = env.at(f->var->var);
        int saved = slot;
        bool result = all;
        for (int d = 0; d < n; ++d) {
          slot = d;
          if (holds(f->lhs, w) != all) {
            result = !all;
            break;
          }
        }
        slot = saved;
        return result;
      }
    }
    return false;
  }
};

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::optional<FoCountermodel> find_fo_countermodel(const FormulaPtr& f, const FoSearchConfig& cfg,
                                                   Deadline& deadline) {
  if (!free_vars(f).empty()) return std::nullopt;
  auto funs = functions_of(f);
  auto preds = predicates_of(f);
  long budget = cfg.budget;
  for (int n = 1; n <= cfg.max_domain && budget > 0; ++n) {
    FoModel m;
    m.n = n;
    m.env.assign(std::max(0, max_var_id(f) + 1), 0);
    std::size_t fsize = 0, psize = 0;
    for (const auto& [s, k] : funs) {
      m.fun_base[s] = fsize;
      fsize += ipow(n, k);
    }
    for (const auto& [s, k] : preds) {
      m.pred_base[s] = psize;
      psize += ipow(n, k);
    }
    // Skip sizes whose valuation space is hopeless for the budget.
    if (psize > 24) break;
    m.fun_table.assign(fsize, 0);
    m.pred_table.assign(psize, 0);
    for (;;) {
      std::fill(m.pred_table.begin(), m.pred_table.end(), 0);
      for (;;) {
        deadline.check();
        if (--budget < 0) return std::nullopt;
        if (!m.holds(f, World::Here)) {
          FoCountermodel cm;
          cm.domain_size = n;
          for (const auto& [s, k] : funs) {
            auto b = m.fun_base[s];
            cm.functions[s].assign(m.fun_table.begin() + b, m.fun_table.begin() + b + ipow(n, k));
          }
          for (const auto& [s, k] : preds) {
            auto b = m.pred_base[s];
            cm.predicates[s].assign(m.pred_table.begin() + b, m.pred_table.begin() + b + ipow(n, k));
          }
          return cm;
        }
        std::size_t k = psize;
        while (k > 0 && m.pred_table[k - 1] == 2) m.pred_table[--k] = 0;
        if (k == 0) break;
        ++m.pred_table[k - 1];
      }
      std::size_t k = fsize;
      while (k > 0 && m.fun_table[k - 1] == n - 1) m.fun_table[--k] = 0;
      if (k == 0) break;
      ++m.fun_table[k - 1];
    }
  }
  return std::nullopt;
}

}  // namespace hat
