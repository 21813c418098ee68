#include "hat/connection.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "hat/function_ref.hpp"

namespace hat {

namespace {

using Cont = FunctionRef<bool()>;
using Kind = MatrixNode::Kind;

bool is_matrix_skolem(const std::string& name) { return name.rfind("$sk_m", 0) == 0; }

// Per-matrix tables shared by all deepening rounds.
struct Prep {
  const PrefixMatrix& m;
  std::vector<int> depth, tin, tout;
  std::unordered_map<int, int> home;            // variable -> node where its occurrences meet
  std::vector<std::vector<TermPtr>> locals;     // clause -> variables homed there
  std::vector<bool> copies_vars;                // clause subtree homes a variable
  std::vector<std::vector<int>> clauses_above;  // literal -> enclosing clauses, innermost first
  std::map<std::pair<std::string, int>, std::vector<int>> by_pred;
  std::vector<std::vector<int>> gammas_at;  // clause -> indices into m.gammas

  explicit Prep(const PrefixMatrix& mat) : m(mat) {
    const int n = static_cast<int>(m.nodes.size());
    depth.assign(n, 0);
    tin.assign(n, 0);
    tout.assign(n, 0);
    locals.resize(n);
    copies_vars.assign(n, false);
    clauses_above.resize(n);
    gammas_at.resize(n);
    int clock = 0;
    number(0, 0, clock);

    std::map<int, TermPtr> var_term;
    std::map<int, int> lca;
    for (int i = 0; i < n; ++i) {
      const MatrixNode& node = m[i];
      if (node.kind != Kind::Literal) continue;
      for (int p = node.parent; p >= 0; p = m[p].parent)
        if (m[p].kind == Kind::Clause) clauses_above[i].push_back(p);
      by_pred[{node.pred, node.polarity}].push_back(i);
      std::map<int, TermPtr> vars;
      for (const auto& t : node.args) gather(t, vars);
      for (const auto& t : node.prefix) gather(t, vars);
      for (const auto& [v, t] : vars) {
        var_term.emplace(v, t);
        auto it = lca.find(v);
        if (it == lca.end())
          lca.emplace(v, node.parent);
        else
          it->second = common(it->second, node.parent);
      }
    }
    // A variable is renamed with the nearest clause above the node where its
    // occurrences meet. Above the root matrix there is no clause, so there
    // each top-level clause renames it on its own: quantifiers over terms and
    // worlds distribute over the clauses.
    std::map<int, std::set<int>> holders;
    for (int i = 0; i < n; ++i) {
      if (m[i].kind != Kind::Literal) continue;
      std::map<int, TermPtr> vars;
      for (const auto& t : m[i].args) gather(t, vars);
      for (const auto& t : m[i].prefix) gather(t, vars);
      for (const auto& [v, t] : vars) {
        int c = lca[v];
        if (c == 0) {
          c = m[i].parent;
          while (m[c].parent != 0) c = m[c].parent;
        } else if (m[c].kind != Kind::Clause) {
          c = m[c].parent;
        }
        holders[v].insert(c);
      }
    }
    for (const auto& [v, cs] : holders) {
      home[v] = lca[v] == 0 ? 0 : *cs.begin();
      for (int c : cs) {
        locals[c].push_back(var_term[v]);
        for (int p = c; p >= 0; p = m[p].parent) copies_vars[p] = true;
      }
    }
    for (int g = 0; g < static_cast<int>(m.gammas.size()); ++g) {
      auto it = holders.find(m.gammas[g].var);
      if (it == holders.end()) continue;
      for (int c : it->second) gammas_at[c].push_back(g);
    }
  }

  bool inside(int anc, int node) const { return tin[anc] <= tin[node] && tout[node] <= tout[anc]; }

 private:
  void number(int id, int d, int& clock) {
    depth[id] = d;
    tin[id] = clock++;
    for (int c : m[id].children) number(c, d + 1, clock);
    tout[id] = clock++;
  }

  int common(int a, int b) const {
    while (depth[a] > depth[b]) a = m[a].parent;
    while (depth[b] > depth[a]) b = m[b].parent;
    while (a != b) {
      a = m[a].parent;
      b = m[b].parent;
    }
    return a;
  }

  static void gather(const TermPtr& t, std::map<int, TermPtr>& out) {
    if (t->is_var()) {
      out.emplace(t->var, t);
      return;
    }
    for (const auto& a : t->args) gather(a, out);
  }
};

// A copy of a clause; its variables are renamed through env, the rest are
// looked up in the enclosing copies.
struct Inst {
  int clause = 0;
  int parent = -1;
  std::vector<std::pair<int, TermPtr>> env;  // sorted by variable
};

struct Goal {
  int node;
  int inst;
};

struct PathNode {
  int lit;
  int inst;
  std::vector<TermPtr> args, prefix;
  const PathNode* up;
  int len;
};

struct RawConnection {
  std::string pred;
  std::vector<TermPtr> args1, prefix1, args2, prefix2;
};

class ConnSearch {
 public:
  ConnSearch(const Prep& prep, const ConnConfig& cfg, int limit, bool rb, Deadline& dl, Stats& stats)
      : p_(prep), m_(prep.m), limit_(limit), max_depth_(cfg.max_depth), reg_(cfg.regularity), rb_(rb),
        eager_(cfg.eager_prefix), pool_(prep.m.next_var), dl_(dl),
        stats_(stats) {
    insts_.push_back({0, -1, {}});
  }

  bool hit_limit = false;
  std::vector<Connection> connections;
  PrefixSolution solution;

  bool run() {
    const auto& top = m_[0].children;
    // The conjecture part comes last in the matrix; start there.
    for (auto it = top.rbegin(); it != top.rend(); ++it) {
      const std::size_t mark = insts_.size();
      int inst = new_inst(*it, 0);
      std::vector<Goal> goals;
      for (int e : m_[*it].children) goals.push_back({e, inst});
      if (prove_goals(goals, 0, nullptr, [this] { return phase2(); })) return true;
      insts_.resize(mark);
    }
    return false;
  }

 private:
  int new_inst(int clause, int parent) {
    Inst in{clause, parent, {}};
    for (const auto& v : p_.locals[clause]) in.env.emplace_back(v->var, pool_.fresh(v->name));
    std::sort(in.env.begin(), in.env.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    insts_.push_back(std::move(in));
    return static_cast<int>(insts_.size()) - 1;
  }

  int inst_of(int inst, int clause) const {
    while (inst >= 0 && insts_[inst].clause != clause) inst = insts_[inst].parent;
    return inst;
  }

  TermPtr rename(const TermPtr& t, int inst) const {
    if (t->is_var()) {
      auto h = p_.home.find(t->var);
      if (h == p_.home.end()) return t;
      int i = inst;
      if (m_[h->second].kind == Kind::Clause) {
        i = inst_of(inst, h->second);
      } else {
        while (i >= 0 && m_[insts_[i].clause].parent != h->second) i = insts_[i].parent;
      }
      if (i < 0) return t;
      const auto& env = insts_[i].env;
      auto it = std::lower_bound(env.begin(), env.end(), t->var,
                                 [](const auto& e, int v) { return e.first < v; });
      return it != env.end() && it->first == t->var ? it->second : t;
    }
    if (t->args.empty()) return t;
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) args.push_back(rename(a, inst));
    return make_fun(t->name, std::move(args));
  }

  std::vector<TermPtr> rename(const std::vector<TermPtr>& ts, int inst) const {
    std::vector<TermPtr> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(rename(t, inst));
    return out;
  }

  bool prove_goals(const std::vector<Goal>& goals, std::size_t i, const PathNode* path, Cont k) {
    if (i == goals.size()) return k();
    auto rest = [&] { return prove_goals(goals, i + 1, path, k); };
    const Goal& g = goals[i];
    if (m_[g.node].kind == Kind::Literal) return prove_lit(g.node, g.inst, path, rest);
    // Decomposition.
    for (int c : m_[g.node].children) {
      const std::size_t mark = insts_.size();
      int inst = new_inst(c, g.inst);
      std::vector<Goal> sub;
      for (int e : m_[c].children) sub.push_back({e, inst});
      if (prove_goals(sub, 0, path, rest)) return true;
      insts_.resize(mark);
    }
    return false;
  }

  bool prove_lit(int lit, int inst, const PathNode* path, Cont k) {
    dl_.check();
    ++stats_.inferences;
    // Continuations keep every solved literal on the stack.
    if (depth_ >= max_depth_) {
      hit_limit = true;
      return false;
    }
    struct Enter {
      int& d;
      explicit Enter(int& x) : d(++x) {}
      ~Enter() { --d; }
    } enter(depth_);
    const MatrixNode& l1 = m_[lit];
    PathNode here{lit, inst, rename(l1.args, inst), rename(l1.prefix, inst), path, path ? path->len + 1 : 1};

    if (reg_) {
      for (const PathNode* p = path; p; p = p->up) {
        const MatrixNode& l = m_[p->lit];
        if (l.polarity == l1.polarity && l.pred == l1.pred && identical_args(p->args, here.args, b_) &&
            identical_args(p->prefix, here.prefix, b_))
          return false;
      }
    }

    bool solved = false;
    auto k2 = [&] {
      solved = true;
      return k();
    };

    // Reduction.
    for (const PathNode* p = path; p; p = p->up) {
      const MatrixNode& l = m_[p->lit];
      if (l.pred != l1.pred || l.polarity == l1.polarity) continue;
      auto mark = b_.mark();
      if (unify_args(here.args, p->args, b_)) {
        conns_.push_back({l1.pred, here.args, here.prefix, p->args, p->prefix});
        if (prefixes_ok() && k2()) return true;
        conns_.pop_back();
        b_.undo(mark);
      }
      if (rb_ && solved) return false;
    }

    // Extension.
    auto cands = p_.by_pred.find({l1.pred, 1 - l1.polarity});
    if (cands == p_.by_pred.end()) return false;
    const int plen = path ? path->len : 0;
    for (int l2 : cands->second) {
      const auto& above = p_.clauses_above[l2];
      const int top = static_cast<int>(above.size()) - 1;
      for (int j = 0; j <= top; ++j) {
        if (plen >= limit_ && p_.copies_vars[above[j]]) {
          hit_limit = true;
          continue;
        }
        for (int parent : parents(above, j, &here)) {
          if (try_extension(here, l2, above, j, parent, k2)) return true;
          if (rb_ && solved) return false;
        }
      }
    }
    return false;
  }

  // Copies of the clause above[j+1] under which a copy of above[j] may be
  // attached: those on the instance chain of a path literal inside the
  // matrix that holds above[j]. The top level always attaches to the root.
  std::vector<int> parents(const std::vector<int>& above, int j, const PathNode* path) const {
    if (j + 1 == static_cast<int>(above.size())) return {0};
    const int matrix = m_[above[j]].parent;
    std::vector<int> out;
    for (const PathNode* p = path; p; p = p->up) {
      if (!p_.inside(matrix, p->lit)) continue;
      int i = inst_of(p->inst, above[j + 1]);
      if (i >= 0 && std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    }
    return out;
  }

  bool try_extension(const PathNode& here, int l2, const std::vector<int>& above, int j, int parent, Cont k) {
    const std::size_t imark = insts_.size();
    const auto bmark = b_.mark();
    std::vector<int> chain(j + 1);
    int up = parent;
    for (int i = j; i >= 0; --i) up = chain[i] = new_inst(above[i], up);
    const MatrixNode& n2 = m_[l2];
    auto args2 = rename(n2.args, chain[0]);
    bool ok = false;
    if (unify_args(here.args, args2, b_)) {
      conns_.push_back({n2.pred, here.args, here.prefix, args2, rename(n2.prefix, chain[0])});
      if (!prefixes_ok()) {
        conns_.pop_back();
        b_.undo(bmark);
        insts_.resize(imark);
        return false;
      }
      std::vector<Goal> goals;
      for (int i = j; i >= 0; --i) {
        const int skip = i == 0 ? l2 : m_[above[i - 1]].parent;
        for (int e : m_[above[i]].children)
          if (e != skip) goals.push_back({e, chain[i]});
      }
      ok = prove_goals(goals, 0, &here, k);
      if (!ok) conns_.pop_back();
    }
    if (!ok) {
      b_.undo(bmark);
      insts_.resize(imark);
    }
    return ok;
  }

  // Prefix symbols after the term substitution; constants are told apart by
  // their resolved arguments.
  bool to_pstring(const std::vector<TermPtr>& prefix, PString& out) {
    for (const auto& t : prefix) {
      TermPtr d = b_.deref(t);
      if (d->is_var()) {
        out.push_back({true, d->var});
        continue;
      }
      if (d->name.size() < 2 || d->name[0] != 'a' ||
          !std::all_of(d->name.begin() + 1, d->name.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return false;
      TermPtr r = b_.resolve(d);
      auto [it, inserted] = consts_.emplace(to_string(r), static_cast<int>(consts_.size()));
      if (inserted) {
        const_deps_.emplace_back();
        vars_in(r, const_deps_.back());
      }
      out.push_back({false, it->second});
    }
    return true;
  }

  static void vars_in(const TermPtr& t, std::vector<int>& out) {
    if (t->is_var()) {
      out.push_back(t->var);
      return;
    }
    for (const auto& a : t->args) vars_in(a, out);
  }

  // Occurs check for prefix constants that depend on variables: no variable
  // may reach itself through the arguments of the constants in its value.
  bool acyclic(const PrefixSolution& sol) const {
    std::map<int, int> state;  // 1 on the stack, 2 done
    std::function<bool(int)> visit = [&](int v) {
      int& st = state[v];
      if (st == 1) return false;
      if (st == 2) return true;
      st = 1;
      if (auto it = sol.find(v); it != sol.end())
        for (const auto& x : it->second)
          if (!x.var)
            for (int d : const_deps_[x.id])
              if (!visit(d)) return false;
      state[v] = 2;
      return true;
    };
    for (const auto& [v, value] : sol)
      if (!visit(v)) return false;
    return true;
  }

  static void skolems_in(const TermPtr& t, std::vector<TermPtr>& out) {
    if (t->is_var()) return;
    if (is_matrix_skolem(t->name)) out.push_back(t);
    for (const auto& a : t->args) skolems_in(a, out);
  }

  static TermPtr replace(const TermPtr& t, const std::map<int, TermPtr>& by) {
    if (t->is_var()) {
      auto it = by.find(t->var);
      return it == by.end() ? t : it->second;
    }
    if (t->args.empty()) return t;
    std::vector<TermPtr> args;
    for (const auto& a : t->args) args.push_back(replace(a, by));
    return make_fun(t->name, std::move(args));
  }

  // Early pruning: the connections collected so far must have unifiable
  // prefixes. The complete check is still phase2.
  bool prefixes_ok() {
    if (!eager_) return true;
    std::vector<PrefixEquation> eqs;
    consts_.clear();
    const_deps_.clear();
    for (const auto& c : conns_) {
      PrefixEquation e;
      if (!to_pstring(c.prefix1, e.lhs) || !to_pstring(c.prefix2, e.rhs)) return false;
      eqs.push_back(std::move(e));
    }
    if (last_ && extend_last(eqs)) return true;
    auto sol = prefix_unify(eqs, &dl_);
    if (!sol) return false;
    last_ = std::move(sol);
    return true;
  }

  // Tries to keep the cached solution for all but the newest equation and
  // solve that one alone.
  bool extend_last(const std::vector<PrefixEquation>& eqs) {
    PrefixSolution& sol = *last_;
    for (std::size_t i = 0; i + 1 < eqs.size(); ++i) {
      for (const auto* side : {&eqs[i].lhs, &eqs[i].rhs})
        for (const auto& x : *side)
          if (x.var && !sol.count(x.id)) sol[x.id] = {};
      if (apply_prefix(sol, eqs[i].lhs) != apply_prefix(sol, eqs[i].rhs)) return false;
    }
    PrefixEquation e;
    auto fix = [&](const PString& in, PString& out) {
      for (const auto& x : in) {
        auto it = x.var ? sol.find(x.id) : sol.end();
        if (it == sol.end())
          out.push_back(x);
        else
          out.insert(out.end(), it->second.begin(), it->second.end());
      }
    };
    fix(eqs.back().lhs, e.lhs);
    fix(eqs.back().rhs, e.rhs);
    auto rest = prefix_unify({e}, &dl_);
    if (!rest) return false;
    for (auto& [v, value] : *rest) sol[v] = std::move(value);
    return true;
  }

  // Prefix unification over the collected connections plus the domain
  // condition: a Skolem term may instantiate x only if it exists at x's world.
  bool phase2() {
    std::vector<PrefixEquation> eqs;
    consts_.clear();
    const_deps_.clear();
    for (const auto& c : conns_) {
      PrefixEquation e;
      if (!to_pstring(c.prefix1, e.lhs) || !to_pstring(c.prefix2, e.rhs)) return false;
      eqs.push_back(std::move(e));
    }
    for (int i = 1; i < static_cast<int>(insts_.size()); ++i) {
      for (int g : p_.gammas_at[insts_[i].clause]) {
        const GammaInfo& info = m_.gammas[g];
        std::vector<TermPtr> us;
        skolems_in(b_.resolve(rename(make_var(info.var), i)), us);
        if (us.empty()) continue;
        PString px;
        if (!to_pstring(rename(info.prefix, i), px)) return false;
        for (const auto& u : us) {
          auto sk = m_.skolems.find(u->name);
          if (sk == m_.skolems.end()) continue;
          std::map<int, TermPtr> by;
          for (std::size_t a = 0; a < sk->second.args.size() && a < u->args.size(); ++a)
            by[sk->second.args[a]->var] = u->args[a];
          PrefixEquation e;
          for (const auto& s : sk->second.prefix)
            if (!to_pstring({replace(s, by)}, e.lhs)) return false;
          e.lhs.push_back({true, pool_.fresh()->var});
          e.rhs = px;
          eqs.push_back(std::move(e));
        }
      }
    }
    auto sol = prefix_unify(eqs, &dl_);
    if (!sol || !acyclic(*sol)) return false;
    solution = std::move(*sol);
    connections.clear();
    for (std::size_t i = 0; i < conns_.size(); ++i) {
      Connection c;
      c.pred = conns_[i].pred;
      for (const auto& a : conns_[i].args1) c.args1.push_back(b_.resolve(a));
      for (const auto& a : conns_[i].args2) c.args2.push_back(b_.resolve(a));
      c.prefix1 = eqs[i].lhs;
      c.prefix2 = eqs[i].rhs;
      connections.push_back(std::move(c));
    }
    return true;
  }

  const Prep& p_;
  const PrefixMatrix& m_;
  int limit_, max_depth_, depth_ = 0;
  bool reg_, rb_, eager_;
  VarPool pool_;
  Bindings b_;
  Deadline& dl_;
  Stats& stats_;
  std::vector<Inst> insts_;
  std::vector<RawConnection> conns_;
  std::map<std::string, int> consts_;
  std::vector<std::vector<int>> const_deps_;  // constant -> variables in its arguments
  std::optional<PrefixSolution> last_;  // latest solution of the eager check
};

}  // namespace

ConnResult prove_connection(const PrefixMatrix& m, const ConnConfig& cfg, Deadline& deadline) {
  ConnResult out;
  const Prep prep(m);
  // One deepening pass; returns true when it found a proof, sets done when
  // the search space was exhausted without hitting the path limit.
  auto pass = [&](bool rb, Deadline& dl) {
    for (int limit = 1; limit <= cfg.max_limit; ++limit) {
      ++out.stats.rounds;
      ConnSearch search(prep, cfg, limit, rb, dl, out.stats);
      if (search.run()) {
        out.status = Status::Proved;
        out.connections = std::move(search.connections);
        out.prefix_solution = std::move(search.solution);
        return true;
      }
      if (!search.hit_limit) break;
    }
    return false;
  };
  try {
    if (cfg.restricted_backtracking) {
      auto left = deadline.remaining();
      Deadline first = left ? Deadline(*left * cfg.rb_share) : Deadline::never();
      try {
        if (pass(true, first)) return out;
      } catch (const TimeoutError&) {
      }
    }
    if (pass(false, deadline)) return out;
    out.status = Status::GaveUp;
  } catch (const TimeoutError&) {
    out.status = Status::Timeout;
  }
  return out;
}

ConnResult prove_connection(const FormulaPtr& f, const ConnConfig& cfg, Deadline& deadline) {
  return prove_connection(build_matrix(f), cfg, deadline);
}

}  // namespace hat
