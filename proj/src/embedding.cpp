#include "hat/embedding.hpp"

namespace hat {

namespace {

std::vector<TermPtr> fresh_vars(int n, const char* base, VarPool& pool) {
  std::vector<TermPtr> out;
  for (int i = 0; i < n; ++i) out.push_back(pool.fresh(base + std::to_string(i + 1)));
  return out;
}

FormulaPtr close_all(const std::vector<TermPtr>& vars, FormulaPtr body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, body);
  return body;
}

}  // namespace

PredSignature signature_of(const FormulaPtr& f) { return predicates_of(f); }

std::vector<FormulaPtr> hos_instances(const PredSignature& sig, VarPool& pool) {
  std::vector<FormulaPtr> out;
  for (const auto& [p, n] : sig) {
    for (int negated = 0; negated < 2; ++negated) {
      for (const auto& [q, m] : sig) {
        if (!negated && p == q && n == m) continue;
        auto xs = fresh_vars(n, "X", pool);
        auto ys = fresh_vars(m, "Y", pool);
        FormulaPtr g = atom(p, xs);
        if (negated) g = neg(g);
        FormulaPtr h = atom(q, ys);
        std::vector<TermPtr> vars = xs;
        vars.insert(vars.end(), ys.begin(), ys.end());
        out.push_back(close_all(vars, disj(disj(g, imp(g, h)), neg(h))));
      }
    }
  }
  return out;
}

std::vector<FormulaPtr> sqht_instances(const PredSignature& sig, VarPool& pool) {
  std::vector<FormulaPtr> out;
  for (const auto& [p, n] : sig) {
    if (n == 0) continue;
    for (int negated = 0; negated < 2; ++negated) {
      auto xs = fresh_vars(n, "X", pool);
      auto ys = fresh_vars(n, "Y", pool);
      FormulaPtr gx = atom(p, xs);
      FormulaPtr gy = atom(p, ys);
      if (negated) {
        gx = neg(gx);
        gy = neg(gy);
      }
      FormulaPtr body = imp(gx, close_all(ys, gy));
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = exists(*it, body);
      out.push_back(body);
    }
  }
  return out;
}

std::vector<FormulaPtr> ht_axioms(const FormulaPtr& f) {
  VarPool pool(max_var_id(f) + 1);
  auto sig = signature_of(f);
  auto out = hos_instances(sig, pool);
  auto sq = sqht_instances(sig, pool);
  out.insert(out.end(), sq.begin(), sq.end());
  return out;
}

FormulaPtr embed(const FormulaPtr& f) {
  auto axioms = ht_axioms(f);
  if (axioms.empty()) return f;
  return imp(conj_all(axioms), f);
}

}  // namespace hat
