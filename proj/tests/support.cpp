#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace hat::test {

std::vector<FormulaPtr> formulas_up_to(int max_size, const std::vector<std::string>& atoms) {
  std::vector<std::vector<FormulaPtr>> by_size(max_size + 1);
  for (const auto& a : atoms) by_size[1].push_back(atom(a));
  for (int n = 2; n <= max_size; ++n) {
    for (const auto& f : by_size[n - 1]) by_size[n].push_back(neg(f));
    for (int k = 1; k + 1 < n; ++k)
      for (const auto& a : by_size[k])
        for (const auto& b : by_size[n - 1 - k])
          for (Op op : {Op::And, Op::Or, Op::Imp}) by_size[n].push_back(binary(op, a, b));
  }
  std::vector<FormulaPtr> out;
  for (const auto& fs : by_size) out.insert(out.end(), fs.begin(), fs.end());
  return out;
}

std::vector<FormulaPtr> random_formulas(int count, int max_size, const std::vector<std::string>& atoms,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::function<FormulaPtr(int)> gen = [&](int n) -> FormulaPtr {
    if (n == 1) return atom(atoms[pick(0, static_cast<int>(atoms.size()) - 1)]);
    if (n == 2 || pick(0, 3) == 0) return neg(gen(n - 1));
    const int k = pick(1, n - 2);
    static const Op ops[] = {Op::And, Op::Or, Op::Imp};
    const Op op = ops[pick(0, 2)];
    FormulaPtr a = gen(k);
    return binary(op, a, gen(n - 1 - k));
  };
  std::vector<FormulaPtr> out;
  for (int i = 0; i < count; ++i) out.push_back(gen(pick(1, max_size)));
  return out;
}

const std::vector<FormulaPtr>& prop_corpus() {
  static const std::vector<FormulaPtr> corpus = [] {
    auto fs = formulas_up_to(7, {"p", "q"});
    auto rs = random_formulas(10000, 12, {"p", "q", "r"}, 20260101);
    fs.insert(fs.end(), rs.begin(), rs.end());
    return fs;
  }();
  return corpus;
}

namespace {

// One premise of a rule: what it adds to each side.
struct Adds {
  std::vector<FormulaPtr> left, right;
};

FormulaPtr expansion(const FormulaPtr& f) { return conj(imp(f->lhs, f->rhs), imp(f->rhs, f->lhs)); }

FormulaPtr body_at(const FormulaPtr& q, const TermPtr& t) { return substitute(q->lhs, q->var->var, t); }

// The premises of the LHT rule for principal formula f on the given side,
// with t as the witness of quantifier rules. Empty for literals.
std::vector<Adds> premises_of(const FormulaPtr& f, bool left, const TermPtr& t) {
  const FormulaPtr& a = f->lhs;
  const FormulaPtr& b = f->rhs;
  switch (f->op) {
    case Op::Atom: return {};
    case Op::And:
      if (left) return {{{a, b}, {}}};
      return {{{}, {a}}, {{}, {b}}};
    case Op::Or:
      if (left) return {{{a}, {}}, {{b}, {}}};
      return {{{}, {a, b}}};
    case Op::Imp:
      if (left) return {{{neg(a)}, {}}, {{}, {a, neg(b)}}, {{b}, {}}};
      return {{{a}, {b}}, {{neg(b)}, {neg(a)}}};
    case Op::Iff:
      if (left) return {{{expansion(f)}, {}}};
      return {{{}, {expansion(f)}}};
    case Op::Forall:
      if (left) return {{{body_at(f, t), f}, {}}};
      return {{{}, {body_at(f, t)}}};
    case Op::Exists:
      if (left) return {{{body_at(f, t)}, {}}};
      return {{{}, {body_at(f, t), f}}};
    case Op::Not: break;
  }
  const FormulaPtr& g = a;
  const FormulaPtr& ga = g->lhs;
  const FormulaPtr& gb = g->rhs;
  switch (g->op) {
    case Op::Atom: return {};
    case Op::And:
      if (left) return {{{neg(ga)}, {}}, {{neg(gb)}, {}}};
      return {{{}, {neg(ga), neg(gb)}}};
    case Op::Or:
      if (left) return {{{neg(ga), neg(gb)}, {}}};
      return {{{}, {neg(ga)}}, {{}, {neg(gb)}}};
    case Op::Imp:
      if (left) return {{{neg(gb)}, {neg(ga)}}};
      return {{{neg(ga)}, {}}, {{}, {neg(gb)}}};
    case Op::Not:
      if (left) return {{{}, {neg(ga)}}};
      return {{{neg(ga)}, {}}};
    case Op::Iff:
      if (left) return {{{neg(expansion(g))}, {}}};
      return {{{}, {neg(expansion(g))}}};
    case Op::Forall:
      if (left) return {{{neg(body_at(g, t))}, {}}};
      return {{{}, {neg(body_at(g, t)), f}}};
    case Op::Exists:
      if (left) return {{{neg(body_at(g, t)), f}, {}}};
      return {{{}, {neg(body_at(g, t))}}};
  }
  return {};
}

// Quantifier rules with an eigenvariable.
bool needs_eigen(const FormulaPtr& f, bool left) {
  if (f->op == Op::Not) {
    const Op g = f->lhs->op;
    return (g == Op::Forall && left) || (g == Op::Exists && !left);
  }
  return (f->op == Op::Forall && !left) || (f->op == Op::Exists && left);
}

bool is_quantifier_rule(const FormulaPtr& f) {
  return f->is_quantifier() || (f->op == Op::Not && f->lhs->is_quantifier());
}

bool same_multiset(std::vector<FormulaPtr> a, std::vector<FormulaPtr> b) {
  if (a.size() != b.size()) return false;
  for (const auto& f : a) {
    auto it = std::find_if(b.begin(), b.end(), [&](const FormulaPtr& g) { return formula_equal(f, g); });
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

bool symbol_in(const std::string& sym, const TermPtr& t) {
  if (t->is_var()) return false;
  if (t->name == sym) return true;
  return std::any_of(t->args.begin(), t->args.end(), [&](const TermPtr& a) { return symbol_in(sym, a); });
}

bool symbol_in(const std::string& sym, const FormulaPtr& f) {
  if (f->op == Op::Atom)
    return std::any_of(f->args.begin(), f->args.end(), [&](const TermPtr& a) { return symbol_in(sym, a); });
  if (f->lhs && symbol_in(sym, f->lhs)) return true;
  return f->rhs && symbol_in(sym, f->rhs);
}

class Checker {
 public:
  explicit Checker(const std::vector<ProofNode>& proof) : proof_(proof) {}

  // Checks the subproof at pos_ for sequent s and moves past it.
  bool node(const Sequent& s) {
    if (pos_ >= proof_.size()) return fail("proof ends early");
    const ProofNode& n = proof_[pos_++];
    if (!same_multiset(n.sequent.left, s.left) || !same_multiset(n.sequent.right, s.right))
      return fail("node " + std::to_string(pos_ - 1) + " proves a different sequent");
    const auto& L = n.sequent.left;
    const auto& R = n.sequent.right;
    if (n.rule == kAxiomRight) {
      if (!in(L, n.principal) || !in(R, n.partner) || !formula_equal(L[n.principal], R[n.partner]))
        return fail("bad axiom G |- G");
      return true;
    }
    if (n.rule == kAxiomLeft) {
      if (!in(L, n.principal) || !in(L, n.partner) || L[n.partner]->op != Op::Not ||
          !formula_equal(L[n.principal], L[n.partner]->lhs))
        return fail("bad axiom G, ~G |-");
      return true;
    }
    const auto& side = n.principal_left ? L : R;
    if (!in(side, n.principal)) return fail("principal out of range");
    const FormulaPtr& f = side[n.principal];
    if (is_quantifier_rule(f)) {
      if (!n.witness) return fail("quantifier rule without witness");
      if (needs_eigen(f, n.principal_left)) {
        if (n.witness->is_var() || !is_skolem_symbol(n.witness->name)) return fail("eigenvariable is not fresh");
        for (const auto& g : L)
          if (symbol_in(n.witness->name, g)) return fail("eigenvariable occurs in the conclusion");
        for (const auto& g : R)
          if (symbol_in(n.witness->name, g)) return fail("eigenvariable occurs in the conclusion");
      }
    }
    auto prem = premises_of(f, n.principal_left, n.witness);
    if (prem.empty()) return fail("no rule for a literal");
    if (static_cast<int>(prem.size()) != n.premises) return fail("wrong number of premises");
    Sequent rest = n.sequent;
    auto& rs = n.principal_left ? rest.left : rest.right;
    rs.erase(rs.begin() + n.principal);
    for (const auto& p : prem) {
      Sequent next{p.left, p.right};
      next.left.insert(next.left.end(), rest.left.begin(), rest.left.end());
      next.right.insert(next.right.end(), rest.right.begin(), rest.right.end());
      if (!node(next)) return false;
    }
    return true;
  }

  bool done() const { return pos_ == proof_.size(); }
  std::string error;

 private:
  static bool in(const std::vector<FormulaPtr>& v, int i) { return i >= 0 && i < static_cast<int>(v.size()); }

  bool fail(std::string msg) {
    if (error.empty()) error = std::move(msg);
    return false;
  }

  const std::vector<ProofNode>& proof_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string check_lht_proof(const FormulaPtr& f, const std::vector<ProofNode>& proof) {
  Checker c(proof);
  if (!c.node(Sequent{{}, {f}})) return c.error;
  if (!c.done()) return "trailing proof nodes";
  return {};
}

std::set<PrefixSolution> brute_force_solutions(const std::vector<PrefixEquation>& eqs) {
  std::set<int> vars, consts;
  for (const auto& e : eqs)
    for (const auto* side : {&e.lhs, &e.rhs})
      for (const auto& x : *side) (x.var ? vars : consts).insert(x.id);
  const int bound = prefix_bound(eqs);
  std::vector<PString> candidates{{}};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (static_cast<int>(candidates[i].size()) == bound) continue;
    for (int c : consts) {
      PString s = candidates[i];
      s.push_back({false, c});
      candidates.push_back(std::move(s));
    }
  }
  const std::vector<int> vs(vars.begin(), vars.end());
  std::set<PrefixSolution> out;
  PrefixSolution sol;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == vs.size()) {
      if (satisfies(sol, eqs)) out.insert(sol);
      return;
    }
    for (const auto& c : candidates) {
      sol[vs[i]] = c;
      go(i + 1);
    }
    sol.erase(vs[i]);
  };
  go(0);
  return out;
}

std::vector<std::vector<PrefixEquation>> prefix_systems(int pairs, std::uint64_t seed) {
  // Alphabets of three symbols, up to renaming: variables 0.., constants 0..
  const std::vector<std::vector<PSym>> alphabets = {
      {{true, 0}, {true, 1}, {true, 2}},
      {{true, 0}, {true, 1}, {false, 0}},
      {{true, 0}, {false, 0}, {false, 1}},
      {{false, 0}, {false, 1}, {false, 2}},
  };
  std::vector<std::vector<PrefixEquation>> out;
  for (const auto& alpha : alphabets) {
    std::vector<PString> strings{{}};
    for (std::size_t i = 0; i < strings.size(); ++i) {
      if (strings[i].size() == 4) continue;
      for (const auto& x : alpha) {
        PString s = strings[i];
        s.push_back(x);
        strings.push_back(std::move(s));
      }
    }
    for (const auto& l : strings)
      for (const auto& r : strings) out.push_back({{l, r}});
  }
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  while (pairs > 0) {
    const auto& alpha = alphabets[pick(0, 2)];
    std::vector<PrefixEquation> sys(2);
    for (auto& e : sys)
      for (auto* side : {&e.lhs, &e.rhs}) {
        const int len = pick(0, 4);
        for (int i = 0; i < len; ++i) side->push_back(alpha[pick(0, 2)]);
      }
    if (prefix_bound(sys) > 6) continue;
    out.push_back(std::move(sys));
    --pairs;
  }
  return out;
}

}  // namespace hat::test
