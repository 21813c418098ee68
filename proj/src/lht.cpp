#include "hat/lht.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "hat/function_ref.hpp"

namespace hat {

namespace {

bool is_atomic(const FormulaPtr& f) { return f->op == Op::Atom; }

FormulaPtr iff_expansion(const FormulaPtr& f) {
  return conj(imp(f->lhs, f->rhs), imp(f->rhs, f->lhs));
}

}  // namespace

int rule_number(const FormulaPtr& f, int pol) {
  if (is_atomic(f)) return 0;
  if (f->op == Op::Not) {
    const FormulaPtr& g = f->lhs;
    switch (g->op) {
      case Op::Atom: return 0;
      case Op::And: return pol ? 10 : 3;
      case Op::Or: return pol ? 4 : 11;
      case Op::Imp: return pol ? 5 : 12;
      case Op::Not: return pol ? 6 : 7;
      case Op::Iff: return pol ? 17 : 18;
      case Op::Forall: return pol ? 19 : 23;
      case Op::Exists: return pol ? 24 : 20;
    }
  }
  switch (f->op) {
    case Op::And: return pol ? 1 : 8;
    case Op::Or: return pol ? 9 : 2;
    case Op::Imp: return pol ? 14 : 13;
    case Op::Iff: return pol ? 15 : 16;
    case Op::Forall: return pol ? 25 : 21;
    case Op::Exists: return pol ? 22 : 26;
    default: return 0;
  }
}

std::optional<RuleApplication> rule_lookup(const FormulaPtr& f, int pol) {
  const int n = rule_number(f, pol);
  if (n == 0) return std::nullopt;
  RuleApplication r;
  r.number = n;
  r.negated = f->op == Op::Not;
  const FormulaPtr& g = r.negated ? f->lhs : f;
  const FormulaPtr& a = g->lhs;
  const FormulaPtr& b = g->rhs;
  auto L = [](std::vector<FormulaPtr> l) { return Delta{std::move(l), {}}; };
  auto R = [](std::vector<FormulaPtr> rr) { return Delta{{}, std::move(rr)}; };
  switch (n) {
    case 1: r.premises = {L({a, b})}; break;
    case 2: r.premises = {R({a, b})}; break;
    case 3: r.premises = {R({neg(a), neg(b)})}; break;
    case 4: r.premises = {L({neg(a), neg(b)})}; break;
    case 5: r.premises = {Delta{{neg(b)}, {neg(a)}}}; break;
    case 6: r.premises = {R({neg(a)})}; break;
    case 7: r.premises = {L({neg(a)})}; break;
    case 8: r.premises = {R({a}), R({b})}; break;
    case 9: r.premises = {L({a}), L({b})}; break;
    case 10: r.premises = {L({neg(a)}), L({neg(b)})}; break;
    case 11: r.premises = {R({neg(a)}), R({neg(b)})}; break;
    case 12: r.premises = {L({neg(a)}), R({neg(b)})}; break;
    case 13: r.premises = {Delta{{a}, {b}}, Delta{{neg(b)}, {neg(a)}}}; break;
    case 14: r.premises = {L({neg(a)}), R({a, neg(b)}), L({b})}; break;
    case 15: r.premises = {L({iff_expansion(g)})}; break;
    case 16: r.premises = {R({iff_expansion(g)})}; break;
    case 17: r.premises = {L({neg(iff_expansion(g))})}; break;
    case 18: r.premises = {R({neg(iff_expansion(g))})}; break;
    default: break;
  }
  if (n <= 7)
    r.kind = RuleKind::Single;
  else if (n <= 14)
    r.kind = RuleKind::Split;
  else if (n <= 18)
    r.kind = RuleKind::Iff;
  else if (n <= 22)
    r.kind = RuleKind::Eigen;
  else
    r.kind = RuleKind::FreeVar;
  return r;
}

Delta instantiate(const FormulaPtr& f, int pol, const TermPtr& t, bool keep_principal) {
  const bool negated = f->op == Op::Not;
  const FormulaPtr& q = negated ? f->lhs : f;
  FormulaPtr c = substitute(q->lhs, q->var->var, t);
  if (negated) c = neg(c);
  std::vector<FormulaPtr> added{c};
  if (keep_principal) added.push_back(f);
  return pol ? Delta{std::move(added), {}} : Delta{{}, std::move(added)};
}

namespace {

bool fvq(const FormulaPtr& f, int pol) {
  switch (f->op) {
    case Op::Atom: return false;
    case Op::Not: return fvq(f->lhs, 1 - pol);
    case Op::And:
    case Op::Or: return fvq(f->lhs, pol) || fvq(f->rhs, pol);
    case Op::Imp: return fvq(f->lhs, 1 - pol) || fvq(f->rhs, pol);
    case Op::Iff:
      return fvq(f->lhs, 0) || fvq(f->lhs, 1) || fvq(f->rhs, 0) || fvq(f->rhs, 1);
    case Op::Forall: return pol == 1 || fvq(f->lhs, pol);
    case Op::Exists: return pol == 0 || fvq(f->lhs, pol);
  }
  return false;
}

}  // namespace

bool has_free_var_quantifier(const FormulaPtr& f) { return fvq(f, 0); }

namespace {

using Cont = FunctionRef<bool()>;

class Search {
 public:
  Search(int limit, int next_var, Deadline& dl, Stats& stats)
      : limit_(limit), pool_(next_var), dl_(dl), stats_(stats) {}

  bool hit_limit = false;
  std::vector<ProofNode> result;

  bool run(const Sequent& s) {
    return prove(s, "s", {}, [&] {
      result = trace_;
      for (auto& n : result) {
        for (auto& f : n.sequent.left) f = resolve(f, b_);
        for (auto& f : n.sequent.right) f = resolve(f, b_);
        if (n.witness) n.witness = b_.resolve(n.witness);
      }
      return true;
    });
  }

 private:
  bool leaf(const Sequent& s, int i, int j, int rule, Cont k) {
    ProofNode n;
    n.sequent = s;
    n.rule = rule;
    n.principal_left = true;
    n.principal = i;
    n.partner = j;
    trace_.push_back(std::move(n));
    if (k()) return true;
    trace_.pop_back();
    return false;
  }

  bool prove(const Sequent& s, const std::string& site, const std::vector<TermPtr>& fv, Cont k) {
    dl_.check();
    ++stats_.inferences;

    for (int i = 0; i < static_cast<int>(s.left.size()); ++i) {
      const FormulaPtr& a = s.left[i];
      auto attempt = [&](const FormulaPtr& b, int j, int rule) -> int {
        if (identical(a, b, b_)) return leaf(s, i, j, rule, k) ? 1 : -1;
        if (!a->is_literal()) return 0;
        auto m = b_.mark();
        if (!unify_literals(a, b, b_)) return 0;
        if (leaf(s, i, j, rule, k)) return 1;
        b_.undo(m);
        return 0;
      };
      for (int j = 0; j < static_cast<int>(s.right.size()); ++j) {
        int r = attempt(s.right[j], j, kAxiomRight);
        if (r != 0) return r > 0;
      }
      for (int j = 0; j < static_cast<int>(s.left.size()); ++j) {
        if (s.left[j]->op != Op::Not) continue;
        int r = attempt(s.left[j]->lhs, j, kAxiomLeft);
        if (r != 0) return r > 0;
      }
    }

    // Invertible rules commit: lowest rule number, then leftmost.
    int best = 0, best_side = 0, best_idx = -1;
    std::vector<std::tuple<int, int, int>> free_rules;
    for (int pol = 1; pol >= 0; --pol) {
      const auto& side = pol ? s.left : s.right;
      for (int i = 0; i < static_cast<int>(side.size()); ++i) {
        int n = rule_number(side[i], pol);
        if (n == 0) continue;
        if (n >= 23) {
          free_rules.emplace_back(n, pol, i);
        } else if (best == 0 || n < best) {
          best = n;
          best_side = pol;
          best_idx = i;
        }
      }
    }
    if (best != 0) return apply(s, best_side, best_idx, site, fv, k);

    // Free-variable rules are backtrack points, tried in table order.
    std::sort(free_rules.begin(), free_rules.end());
    for (const auto& [n, pol, i] : free_rules) {
      (void)n;
      if (static_cast<int>(fv.size()) >= limit_) {
        hit_limit = true;
        return false;
      }
      if (apply(s, pol, i, site, fv, k)) return true;
    }
    return false;
  }

  bool apply(const Sequent& s, int pol, int idx, const std::string& site, const std::vector<TermPtr>& fv,
             Cont k) {
    const FormulaPtr& f = pol ? s.left[idx] : s.right[idx];
    auto rule = rule_lookup(f, pol);
    ProofNode node;
    node.sequent = s;
    node.rule = rule->number;
    node.principal_left = pol == 1;
    node.principal = idx;

    std::vector<TermPtr> fv1 = fv;
    if (rule->kind == RuleKind::Eigen) {
      node.witness = skolem_term(site, fv);
      rule->premises = {instantiate(f, pol, node.witness, false)};
    } else if (rule->kind == RuleKind::FreeVar) {
      const FormulaPtr& q = rule->negated ? f->lhs : f;
      node.witness = pool_.fresh(q->var->name);
      fv1.push_back(node.witness);
      rule->premises = {instantiate(f, pol, node.witness, true)};
    }
    node.premises = static_cast<int>(rule->premises.size());

    Sequent rest = s;
    auto& side = pol ? rest.left : rest.right;
    side.erase(side.begin() + idx);

    std::vector<Sequent> prem;
    for (const auto& d : rule->premises) {
      Sequent p;
      p.left = d.left;
      p.left.insert(p.left.end(), rest.left.begin(), rest.left.end());
      p.right = d.right;
      p.right.insert(p.right.end(), rest.right.begin(), rest.right.end());
      prem.push_back(std::move(p));
    }

    const std::size_t mark = trace_.size();
    trace_.push_back(std::move(node));
    ++stats_.inferences;
    if (premises(prem, 0, site, fv1, k)) return true;
    trace_.resize(mark);
    return false;
  }

  bool premises(const std::vector<Sequent>& prem, std::size_t i, const std::string& site,
                const std::vector<TermPtr>& fv, Cont k) {
    if (i == prem.size()) return k();
    static const char kTag[] = {'l', 'r', 'x'};
    return prove(prem[i], site + kTag[i], fv, [&] { return premises(prem, i + 1, site, fv, k); });
  }

  int limit_;
  VarPool pool_;
  Bindings b_;
  Deadline& dl_;
  Stats& stats_;
  std::vector<ProofNode> trace_;
};

int max_var_id(const Sequent& s) {
  int m = -1;
  for (const auto& f : s.left) m = std::max(m, max_var_id(f));
  for (const auto& f : s.right) m = std::max(m, max_var_id(f));
  return m;
}

}  // namespace

std::optional<std::vector<ProofNode>> prove_sequent(const Sequent& s, int var_limit, Deadline& deadline,
                                                    Stats& stats, bool& hit_limit) {
  Search search(var_limit, max_var_id(s) + 1, deadline, stats);
  bool ok = search.run(s);
  hit_limit = search.hit_limit;
  if (!ok) return std::nullopt;
  return std::move(search.result);
}

LhtResult prove_lht(const FormulaPtr& f, const LhtConfig& cfg, Deadline& deadline) {
  LhtResult out;
  const bool free_var_quantifiers = has_free_var_quantifier(f);
  Sequent start{{}, {f}};
  try {
    for (int limit = cfg.initial_limit;; ++limit) {
      ++out.stats.rounds;
      bool hit_limit = false;
      if (auto proof = prove_sequent(start, limit, deadline, out.stats, hit_limit)) {
        out.status = Status::Proved;
        out.proof = std::move(*proof);
        return out;
      }
      // Without a limited branch a higher limit would repeat the same search.
      if (!free_var_quantifiers || !hit_limit) {
        out.status = Status::Refuted;
        return out;
      }
      if (cfg.countermodel && limit == cfg.initial_limit) {
        if (auto cm = find_fo_countermodel(f, cfg.fo, deadline)) {
          out.status = Status::Refuted;
          out.countermodel = std::move(cm);
          return out;
        }
      }
      if (limit >= cfg.max_limit) {
        out.status = Status::GaveUp;
        return out;
      }
    }
  } catch (const TimeoutError&) {
    out.status = Status::Timeout;
  }
  return out;
}

namespace {

std::size_t print_node(std::ostream& os, const std::vector<ProofNode>& proof, std::size_t i, int depth) {
  const ProofNode& n = proof[i];
  os << std::string(depth * 2, ' ');
  if (n.rule == kAxiomRight)
    os << "axiom1";
  else if (n.rule == kAxiomLeft)
    os << "axiom2";
  else
    os << 'r' << n.rule;
  os << "  ";
  for (std::size_t k = 0; k < n.sequent.left.size(); ++k) os << (k ? ", " : "") << n.sequent.left[k];
  os << " |- ";
  for (std::size_t k = 0; k < n.sequent.right.size(); ++k) os << (k ? ", " : "") << n.sequent.right[k];
  os << '\n';
  std::size_t next = i + 1;
  for (int c = 0; c < n.premises; ++c) next = print_node(os, proof, next, depth + 1);
  return next;
}

}  // namespace

std::string to_string(const std::vector<ProofNode>& proof) {
  std::ostringstream os;
  if (!proof.empty()) print_node(os, proof, 0, 0);
  return os.str();
}

}  // namespace hat
