#include "hat/lj.hpp"

#include <map>
#include <sstream>

#include "hat/function_ref.hpp"
#include "hat/lht.hpp"

namespace hat {

namespace {

using Cont = FunctionRef<bool()>;

struct LjSeq {
  std::vector<FormulaPtr> left;  // kept free of identical duplicates
  FormulaPtr right;              // null for an empty succedent
};

// Ancestor chain for the loop check.
struct Anc {
  const LjSeq* seq;
  const Anc* up;
};

void key_term(std::ostream& os, const TermPtr& t, const Bindings& b) {
  TermPtr d = b.deref(t);
  if (d->is_var()) {
    os << 'v' << d->var;
    return;
  }
  os << d->name << '(';
  for (const auto& a : d->args) {
    key_term(os, a, b);
    os << ',';
  }
  os << ')';
}

void key_formula(std::ostream& os, const FormulaPtr& f, const Bindings& b) {
  os << static_cast<int>(f->op);
  switch (f->op) {
    case Op::Atom:
      os << f->pred << '(';
      for (const auto& a : f->args) {
        key_term(os, a, b);
        os << ',';
      }
      os << ')';
      return;
    case Op::Not: key_formula(os, f->lhs, b); return;
    case Op::Forall:
    case Op::Exists:
      os << 'v' << f->var->var;
      key_formula(os, f->lhs, b);
      return;
    default:
      os << '(';
      key_formula(os, f->lhs, b);
      os << ',';
      key_formula(os, f->rhs, b);
      os << ')';
  }
}

class LjSearch {
 public:
  LjSearch(int limit, int max_depth, int next_var, Deadline& dl, Stats& stats)
      : limit_(limit), max_depth_(max_depth), pool_(next_var), dl_(dl), stats_(stats) {}

  bool hit_limit = false;
  bool cut = false;  // some branch went past max_depth

  bool run(const FormulaPtr& f) {
    LjSeq s{{}, f};
    return prove(s, {}, nullptr, [] { return true; });
  }

 private:
  bool contains(const std::vector<FormulaPtr>& left, const FormulaPtr& f) const {
    for (const auto& g : left)
      if (identical(g, f, b_)) return true;
    return false;
  }

  // Context without position `skip`, with `add` prepended.
  std::vector<FormulaPtr> context(const std::vector<FormulaPtr>& left, int skip,
                                  std::initializer_list<FormulaPtr> add) const {
    std::vector<FormulaPtr> out;
    for (const auto& f : add)
      if (!contains(out, f)) out.push_back(f);
    for (int i = 0; i < static_cast<int>(left.size()); ++i)
      if (i != skip && !contains(out, left[i])) out.push_back(left[i]);
    return out;
  }

  bool same(const LjSeq& a, const LjSeq& b) const {
    if (a.left.size() != b.left.size()) return false;
    if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
    if (a.right && !identical(a.right, b.right, b_)) return false;
    for (const auto& f : a.left)
      if (!contains(b.left, f)) return false;
    return true;
  }

  // Skolem term keyed by the principal formula, so a repeated formula on a
  // branch gets the same witness and the loop check still sees repetition.
  TermPtr skolem(const FormulaPtr& principal, const std::vector<TermPtr>& fv) {
    std::ostringstream os;
    key_formula(os, principal, b_);
    auto [it, inserted] = sites_.emplace(os.str(), static_cast<int>(sites_.size()));
    (void)inserted;
    return skolem_term("j" + std::to_string(it->second), fv);
  }

  bool prove(const LjSeq& s, const std::vector<TermPtr>& fv, const Anc* up, Cont k) {
    dl_.check();
    ++stats_.inferences;
    if (depth_ >= max_depth_) {
      cut = true;
      return false;
    }
    struct Nest {
      int& d;
      explicit Nest(int& depth) : d(++depth) {}
      ~Nest() { --d; }
    } nest(depth_);
    for (const Anc* a = up; a; a = a->up)
      if (same(*a->seq, s)) return false;
    const Anc here{&s, up};
    const int n = static_cast<int>(s.left.size());

    // Axioms.
    if (s.right && s.right->op == Op::Atom) {
      for (const auto& a : s.left) {
        if (a->op != Op::Atom) continue;
        if (identical(a, s.right, b_)) return k();
      }
      for (const auto& a : s.left) {
        if (a->op != Op::Atom) continue;
        auto m = b_.mark();
        if (!unify_literals(a, s.right, b_)) continue;
        if (k()) return true;
        b_.undo(m);
      }
    }
    for (const auto& a : s.left)
      if (a->op == Op::Not && contains(s.left, a->lhs)) return k();

    auto one = [&](LjSeq p) { return prove(p, fv, &here, k); };
    auto two = [&](LjSeq p1, LjSeq p2) {
      return prove(p1, fv, &here, [&] { return prove(p2, fv, &here, k); });
    };

    // Invertible left rules.
    for (int i = 0; i < n; ++i) {
      const FormulaPtr& f = s.left[i];
      if (f->op == Op::And) return one({context(s.left, i, {f->lhs, f->rhs}), s.right});
      if (f->op == Op::Iff)
        return one({context(s.left, i, {imp(f->lhs, f->rhs), imp(f->rhs, f->lhs)}), s.right});
      if (f->op == Op::Imp && contains(s.left, f->lhs))
        return one({context(s.left, i, {f->rhs}), s.right});
    }
    // Invertible right rules.
    if (const FormulaPtr& c = s.right) {
      switch (c->op) {
        case Op::Imp: return one({context(s.left, -1, {c->lhs}), c->rhs});
        case Op::Iff:
          return two({s.left, imp(c->lhs, c->rhs)}, {s.left, imp(c->rhs, c->lhs)});
        case Op::And: return two({s.left, c->lhs}, {s.left, c->rhs});
        case Op::Not: return one({context(s.left, -1, {c->lhs}), nullptr});
        case Op::Forall:
          return one({s.left, substitute(c->lhs, c->var->var, skolem(c, fv))});
        default: break;
      }
    }
    for (int i = 0; i < n; ++i) {
      const FormulaPtr& f = s.left[i];
      if (f->op == Op::Exists)
        return one({context(s.left, i, {substitute(f->lhs, f->var->var, skolem(f, fv))}), s.right});
    }
    for (int i = 0; i < n; ++i) {
      const FormulaPtr& f = s.left[i];
      if (f->op == Op::Or)
        return two({context(s.left, i, {f->lhs}), s.right}, {context(s.left, i, {f->rhs}), s.right});
    }

    // Backtrack points.
    if (s.right && s.right->op == Op::Or) {
      if (one({s.left, s.right->lhs})) return true;
      if (one({s.left, s.right->rhs})) return true;
    }
    for (int i = 0; i < n; ++i) {
      const FormulaPtr& f = s.left[i];
      if (f->op == Op::Not && one({s.left, f->lhs})) return true;
    }
    for (int i = 0; i < n; ++i) {
      const FormulaPtr& f = s.left[i];
      if (f->op == Op::Imp && two({s.left, f->lhs}, {context(s.left, i, {f->rhs}), s.right})) return true;
    }
    const bool room = static_cast<int>(fv.size()) < limit_;
    for (int i = 0; i < n; ++i) {
      const FormulaPtr& f = s.left[i];
      if (f->op != Op::Forall) continue;
      if (!room) {
        hit_limit = true;
        break;
      }
      auto x = pool_.fresh(f->var->name);
      std::vector<TermPtr> fv1 = fv;
      fv1.push_back(x);
      LjSeq p{context(s.left, -1, {substitute(f->lhs, f->var->var, x)}), s.right};
      if (prove(p, fv1, &here, k)) return true;
    }
    if (s.right && s.right->op == Op::Exists) {
      if (!room) {
        hit_limit = true;
      } else {
        const FormulaPtr& c = s.right;
        auto x = pool_.fresh(c->var->name);
        std::vector<TermPtr> fv1 = fv;
        fv1.push_back(x);
        LjSeq p{s.left, substitute(c->lhs, c->var->var, x)};
        if (prove(p, fv1, &here, k)) return true;
      }
    }
    return false;
  }

  int limit_, max_depth_, depth_ = 0;
  VarPool pool_;
  Bindings b_;
  Deadline& dl_;
  Stats& stats_;
  std::map<std::string, int> sites_;
};

}  // namespace

LjResult prove_lj(const FormulaPtr& f, const LjConfig& cfg, Deadline& deadline) {
  LjResult out;
  const bool free_var_quantifiers = has_free_var_quantifier(f);
  try {
    for (int limit = cfg.initial_limit;; ++limit) {
      ++out.stats.rounds;
      LjSearch search(limit, cfg.max_depth, max_var_id(f) + 1, deadline, out.stats);
      if (search.run(f)) {
        out.status = Status::Proved;
        return out;
      }
      if (search.cut) {
        out.status = Status::GaveUp;
        return out;
      }
      if (!free_var_quantifiers || !search.hit_limit) {
        out.status = Status::Refuted;
        return out;
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

}  // namespace hat
