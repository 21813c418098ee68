#include "hat/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace hat {

namespace {

struct BElem;
struct BClause {
  std::vector<BElem> elems;
  bool gamma = false;
};
using BMatrix = std::vector<BClause>;

struct BElem {
  bool is_lit = false;
  MatrixNode lit;
  BMatrix matrix;
};

class Builder {
 public:
  explicit Builder(int next_var) : pool_(next_var) {}

  PrefixMatrix out;

  BMatrix build(const FormulaPtr& f, int pol, const std::vector<TermPtr>& p) {
    switch (f->op) {
      case Op::Atom: {
        BElem e;
        e.is_lit = true;
        e.lit.kind = MatrixNode::Kind::Literal;
        e.lit.pred = f->pred;
        e.lit.args = f->args;
        e.lit.polarity = pol;
        e.lit.prefix = p;
        e.lit.prefix.push_back(pol == 0 ? constant(f, p) : prefix_var());
        BClause c;
        c.elems.push_back(std::move(e));
        return {std::move(c)};
      }
      case Op::Not:
        return pol == 0 ? build(f->lhs, 1, extend(p, constant(f, p))) : build(f->lhs, 0, extend(p, prefix_var()));
      case Op::And:
      case Op::Or: {
        // Left operand first so fresh symbols are numbered left to right.
        BMatrix l = build(f->lhs, pol, p);
        BMatrix r = build(f->rhs, pol, p);
        return (f->op == Op::And) == (pol == 1) ? alpha(std::move(l), std::move(r))
                                                : beta(std::move(l), std::move(r));
      }
      case Op::Imp: {
        auto q = extend(p, pol == 0 ? constant(f, p) : prefix_var());
        BMatrix l = build(f->lhs, 1 - pol, q);
        BMatrix r = build(f->rhs, pol, q);
        return pol == 0 ? alpha(std::move(l), std::move(r)) : beta(std::move(l), std::move(r));
      }
      case Op::Iff: return build(conj(imp(f->lhs, f->rhs), imp(f->rhs, f->lhs)), pol, p);
      case Op::Forall:
      case Op::Exists: {
        const bool gamma = (f->op == Op::Forall) == (pol == 1);
        if (gamma) {
          auto x = pool_.fresh(f->var->name);
          auto q = f->op == Op::Forall ? extend(p, prefix_var()) : p;
          out.gammas.push_back({x->var, q});
          return wrap(build(substitute(f->lhs, f->var->var, x), pol, q));
        }
        auto q = f->op == Op::Forall ? extend(p, constant(f, p)) : p;
        auto deps = dependencies(f, p);
        auto t = skolem_term("m" + std::to_string(++skolems_), deps);
        out.skolems[t->name] = {deps, q};
        return build(substitute(f->lhs, f->var->var, t), pol, q);
      }
    }
    return {};
  }

  int emit_matrix(const BMatrix& m, int parent) {
    int id = add(MatrixNode::Kind::Matrix, parent);
    for (const auto& c : m) {
      int cid = add(MatrixNode::Kind::Clause, id);
      out.nodes[cid].gamma = c.gamma;
      out.nodes[id].children.push_back(cid);
      for (const auto& e : c.elems) {
        int eid;
        if (e.is_lit) {
          eid = static_cast<int>(out.nodes.size());
          out.nodes.push_back(e.lit);
          out.nodes[eid].parent = cid;
        } else {
          eid = emit_matrix(e.matrix, cid);
        }
        out.nodes[cid].children.push_back(eid);
      }
    }
    return id;
  }

  int next_var() const { return pool_.next_id(); }

 private:
  int add(MatrixNode::Kind k, int parent) {
    MatrixNode n;
    n.kind = k;
    n.parent = parent;
    out.nodes.push_back(std::move(n));
    return static_cast<int>(out.nodes.size()) - 1;
  }

  // Free term variables of f followed by the prefix variables of p.
  std::vector<TermPtr> dependencies(const FormulaPtr& f, const std::vector<TermPtr>& p) {
    std::vector<TermPtr> deps = free_var_terms(f);
    std::set<int> seen;
    for (const auto& t : deps) seen.insert(t->var);
    for (const auto& s : p) {
      if (s->is_var()) {
        if (seen.insert(s->var).second) deps.push_back(s);
      } else {
        for (const auto& a : s->args)
          if (a->is_var() && seen.insert(a->var).second) deps.push_back(a);
      }
    }
    return deps;
  }

  TermPtr constant(const FormulaPtr& f, const std::vector<TermPtr>& p) {
    return make_fun("a" + std::to_string(++constants_), dependencies(f, p));
  }

  TermPtr prefix_var() {
    auto v = pool_.fresh("V" + std::to_string(++prefix_vars_));
    out.prefix_vars.insert(v->var);
    return v;
  }

  static std::vector<TermPtr> extend(std::vector<TermPtr> p, TermPtr s) {
    p.push_back(std::move(s));
    return p;
  }

  static BMatrix alpha(BMatrix a, BMatrix b) {
    for (auto& c : b) a.push_back(std::move(c));
    return a;
  }

  // Single-clause submatrices are spliced into the enclosing clause, except
  // clauses that own quantifier copies.
  static void splice(BClause& into, BMatrix m) {
    if (m.size() == 1 && !m[0].gamma) {
      for (auto& e : m[0].elems) into.elems.push_back(std::move(e));
      return;
    }
    BElem e;
    e.matrix = std::move(m);
    into.elems.push_back(std::move(e));
  }

  static BMatrix beta(BMatrix a, BMatrix b) {
    BClause c;
    splice(c, std::move(a));
    splice(c, std::move(b));
    return {std::move(c)};
  }

  static BMatrix wrap(BMatrix m) {
    BClause c;
    c.gamma = true;
    splice(c, std::move(m));
    return {std::move(c)};
  }

  VarPool pool_;
  int constants_ = 0;
  int prefix_vars_ = 0;
  int skolems_ = 0;
};

void print(std::ostream& os, const PrefixMatrix& m, int id) {
  const MatrixNode& n = m[id];
  switch (n.kind) {
    case MatrixNode::Kind::Literal:
      os << n.pred;
      if (!n.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < n.args.size(); ++i) os << (i ? "," : "") << n.args[i];
        os << ')';
      }
      os << '^' << n.polarity << ':' << prefix_to_string(n.prefix);
      return;
    case MatrixNode::Kind::Clause:
    case MatrixNode::Kind::Matrix:
      os << '{';
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) os << ", ";
        print(os, m, n.children[i]);
      }
      os << '}';
      return;
  }
}

}  // namespace

int PrefixMatrix::literal_count() const {
  int n = 0;
  for (const auto& node : nodes) n += node.kind == MatrixNode::Kind::Literal;
  return n;
}

PrefixMatrix build_matrix(const FormulaPtr& f) {
  if (!free_vars(f).empty()) throw std::invalid_argument("build_matrix: formula has free variables");
  Builder b(max_var_id(f) + 1);
  BMatrix m = b.build(f, 0, {});
  b.emit_matrix(m, -1);
  b.out.next_var = b.next_var();
  return std::move(b.out);
}

std::string prefix_to_string(const std::vector<TermPtr>& prefix) {
  std::ostringstream os;
  for (std::size_t i = 0; i < prefix.size(); ++i) os << (i ? " " : "") << prefix[i];
  return os.str();
}

std::string to_string(const PrefixMatrix& m) {
  std::ostringstream os;
  if (!m.nodes.empty()) print(os, m, 0);
  return os.str();
}

}  // namespace hat
