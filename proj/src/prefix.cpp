#include "hat/prefix.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hat {

PString apply_prefix(const PrefixSolution& s, const PString& p) {
  PString out;
  for (const auto& x : p) {
    if (!x.var) {
      out.push_back(x);
      continue;
    }
    auto it = s.find(x.id);
    if (it == s.end()) continue;
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

bool satisfies(const PrefixSolution& s, const std::vector<PrefixEquation>& eqs) {
  for (const auto& e : eqs)
    if (apply_prefix(s, e.lhs) != apply_prefix(s, e.rhs)) return false;
  return true;
}

int prefix_bound(const std::vector<PrefixEquation>& eqs) {
  int n = 0;
  for (const auto& e : eqs) {
    for (const auto& x : e.lhs) n += !x.var;
    for (const auto& x : e.rhs) n += !x.var;
  }
  return n;
}

namespace {

// Branching solver in the style of Nielsen transformations. Each variable
// carries an upper bound on its length; binding V := c V' or V := W V'
// gives V' a smaller bound, which makes the search finite.
class Solver {
 public:
  using Visit = std::function<bool(const std::map<int, PString>&, const std::map<int, int>&)>;

  Solver(const std::vector<PrefixEquation>& eqs, Deadline* dl) : dl_(dl) {
    int bound = prefix_bound(eqs);
    int max_id = -1;
    for (const auto& e : eqs) {
      for (const auto& x : e.lhs)
        if (x.var) max_id = std::max(max_id, x.id);
      for (const auto& x : e.rhs)
        if (x.var) max_id = std::max(max_id, x.id);
    }
    next_ = max_id + 1;
    for (const auto& e : eqs) {
      for (const auto* side : {&e.lhs, &e.rhs})
        for (const auto& x : *side)
          if (x.var) ub_.emplace(x.id, bound);
      eqs_.push_back(e);
    }
  }

  // Calls visit with (bindings, bounds of open variables) for each solved
  // state until visit returns true.
  bool run(const Visit& visit) { return solve(eqs_, {}, ub_, visit); }

 private:
  static void subst(PString& p, int var, const PString& by) {
    PString out;
    for (const auto& x : p) {
      if (x.var && x.id == var)
        out.insert(out.end(), by.begin(), by.end());
      else
        out.push_back(x);
    }
    p = std::move(out);
  }

  bool bind(std::vector<PrefixEquation> eqs, std::map<int, PString> sigma, std::map<int, int> ub, int var,
            const PString& by, const Visit& visit) {
    for (auto& e : eqs) {
      subst(e.lhs, var, by);
      subst(e.rhs, var, by);
    }
    for (auto& [v, s] : sigma) subst(s, var, by);
    sigma[var] = by;
    ub.erase(var);
    return solve(std::move(eqs), std::move(sigma), std::move(ub), visit);
  }

  bool solve(std::vector<PrefixEquation> eqs, std::map<int, PString> sigma, std::map<int, int> ub,
             const Visit& visit) {
    if (dl_) dl_->check();
    while (!eqs.empty()) {
      auto& e = eqs.back();
      // Strip equal heads and tails.
      std::size_t i = 0;
      while (i < e.lhs.size() && i < e.rhs.size() && e.lhs[i] == e.rhs[i]) ++i;
      e.lhs.erase(e.lhs.begin(), e.lhs.begin() + i);
      e.rhs.erase(e.rhs.begin(), e.rhs.begin() + i);
      while (!e.lhs.empty() && !e.rhs.empty() && e.lhs.back() == e.rhs.back()) {
        e.lhs.pop_back();
        e.rhs.pop_back();
      }
      if (e.lhs.empty() && e.rhs.empty()) {
        eqs.pop_back();
        continue;
      }
      if (e.lhs.empty() || e.rhs.empty()) {
        const PString& rest = e.lhs.empty() ? e.rhs : e.lhs;
        for (const auto& x : rest)
          if (!x.var) return false;
        PString vars = rest;
        for (const auto& x : vars) {
          if (ub.count(x.id) == 0) continue;  // already erased via an earlier duplicate
          for (auto& f : eqs) {
            subst(f.lhs, x.id, {});
            subst(f.rhs, x.id, {});
          }
          for (auto& [v, s] : sigma) subst(s, x.id, {});
          sigma[x.id] = {};
          ub.erase(x.id);
        }
        continue;
      }
      PSym a = e.lhs.front(), b = e.rhs.front();
      if (!a.var && !b.var) return false;
      if (!a.var) std::swap(a, b);
      // a is a variable here.
      if (bind(eqs, sigma, ub, a.id, {}, visit)) return true;
      if (!b.var) {
        if (ub[a.id] > 0) {
          PSym fresh{true, next_++};
          auto ub2 = ub;
          ub2[fresh.id] = ub[a.id] - 1;
          if (bind(eqs, sigma, ub2, a.id, {b, fresh}, visit)) return true;
        }
        return false;
      }
      if (bind(eqs, sigma, ub, b.id, {}, visit)) return true;
      if (ub[a.id] > 0) {
        PSym fresh{true, next_++};
        auto ub2 = ub;
        ub2[fresh.id] = ub[a.id] - 1;
        if (bind(eqs, sigma, ub2, a.id, {b, fresh}, visit)) return true;
      }
      if (ub[b.id] > 0) {
        PSym fresh{true, next_++};
        auto ub2 = ub;
        ub2[fresh.id] = ub[b.id] - 1;
        if (bind(eqs, sigma, ub2, b.id, {a, fresh}, visit)) return true;
      }
      return false;
    }
    return visit(sigma, ub);
  }

  Deadline* dl_;
  int next_ = 0;
  std::vector<PrefixEquation> eqs_;
  std::map<int, int> ub_;
};

// Solver for the first solution. The system is split into independent
// components, each normalized with cheap failure checks before branching on
// the head or tail with the fewest alternatives. Failed states are memoized.
class FirstSolver {
 public:
  FirstSolver(const std::vector<PrefixEquation>& eqs, Deadline* dl) : dl_(dl) {
    const int bound = prefix_bound(eqs);
    int max_id = -1;
    for (const auto& e : eqs)
      for (const auto* side : {&e.lhs, &e.rhs})
        for (const auto& x : *side)
          if (x.var) {
            max_id = std::max(max_id, x.id);
            ub_[x.id] = bound;
          }
    next_ = max_id + 1;
  }

  bool solve(std::vector<PrefixEquation> eqs) {
    if (dl_) dl_->check();
    if (!normalize(eqs)) return false;
    if (eqs.empty()) return true;
    auto parts = components(eqs);
    if (parts.size() > 1) {
      std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
      for (auto& part : parts)
        if (!solve(std::move(part))) return false;
      return true;
    }
    eqs = std::move(parts[0]);
    const std::string key = canonical(eqs);
    if (failed_.count(key)) return false;

    // Pick the branching point with the fewest alternatives.
    int best_eq = -1, best_cost = 5;
    bool best_tail = false;
    for (int i = 0; i < static_cast<int>(eqs.size()) && best_cost > 2; ++i) {
      for (bool tail : {false, true}) {
        const auto& e = eqs[i];
        PSym a = tail ? e.lhs.back() : e.lhs.front();
        PSym b = tail ? e.rhs.back() : e.rhs.front();
        int cost = a.var && b.var ? 4 : 2;
        if (cost < best_cost) {
          best_cost = cost;
          best_eq = i;
          best_tail = tail;
        }
      }
    }
    const auto& e = eqs[best_eq];
    PSym a = best_tail ? e.lhs.back() : e.lhs.front();
    PSym b = best_tail ? e.rhs.back() : e.rhs.front();
    if (!a.var) std::swap(a, b);

    // a := (b a') at the head, (a' b) at the tail.
    auto split = [&](PSym v, PSym by) {
      if (ub_[v.id] <= 0) return false;
      PSym fresh{true, next_++};
      ub_[fresh.id] = ub_[v.id] - 1;
      return attempt(eqs, v.id, best_tail ? PString{fresh, by} : PString{by, fresh});
    };
    bool ok = attempt(eqs, a.id, {}) || (b.var && attempt(eqs, b.id, {})) || split(a, b) || (b.var && split(b, a));
    if (!ok) failed_.insert(key);
    return ok;
  }

  PrefixSolution solution(const std::set<int>& vars) const {
    PrefixSolution out;
    for (int v : vars) out[v] = resolve(v);
    return out;
  }

 private:
  bool attempt(const std::vector<PrefixEquation>& eqs, int var, const PString& by) {
    const std::size_t mark = trail_.size();
    std::vector<PrefixEquation> next = eqs;
    for (auto& e : next) {
      subst(e.lhs, var, by);
      subst(e.rhs, var, by);
    }
    trail_.emplace_back(var, by);
    if (solve(std::move(next))) return true;
    trail_.resize(mark);
    return false;
  }

  static void subst(PString& p, int var, const PString& by) {
    if (std::none_of(p.begin(), p.end(), [&](const PSym& x) { return x.var && x.id == var; })) return;
    PString out;
    out.reserve(p.size() + by.size());
    for (const auto& x : p) {
      if (x.var && x.id == var)
        out.insert(out.end(), by.begin(), by.end());
      else
        out.push_back(x);
    }
    p = std::move(out);
  }

  // Strips equal ends, drops solved equations and forces variables against
  // empty sides. False if some equation is visibly unsolvable.
  bool normalize(std::vector<PrefixEquation>& eqs) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < eqs.size();) {
        auto& e = eqs[i];
        std::size_t h = 0;
        while (h < e.lhs.size() && h < e.rhs.size() && e.lhs[h] == e.rhs[h]) ++h;
        if (h) {
          e.lhs.erase(e.lhs.begin(), e.lhs.begin() + h);
          e.rhs.erase(e.rhs.begin(), e.rhs.begin() + h);
        }
        while (!e.lhs.empty() && !e.rhs.empty() && e.lhs.back() == e.rhs.back()) {
          e.lhs.pop_back();
          e.rhs.pop_back();
        }
        if (e.lhs.empty() && e.rhs.empty()) {
          eqs.erase(eqs.begin() + i);
          continue;
        }
        if (e.lhs.empty() || e.rhs.empty()) {
          PString rest = e.lhs.empty() ? e.rhs : e.lhs;
          eqs.erase(eqs.begin() + i);
          for (const auto& x : rest)
            if (!x.var) return false;
          for (const auto& x : rest) {
            for (auto& f : eqs) {
              subst(f.lhs, x.id, {});
              subst(f.rhs, x.id, {});
            }
            trail_.emplace_back(x.id, PString{});
          }
          changed = true;
          break;
        }
        if (!plausible(e)) return false;
        ++i;
      }
    }
    return true;
  }

  bool plausible(const PrefixEquation& e) const {
    if (!e.lhs.front().var && !e.rhs.front().var) return false;  // ends differ after stripping
    if (!e.lhs.back().var && !e.rhs.back().var) return false;
    for (int side = 0; side < 2; ++side) {
      const PString& g = side ? e.rhs : e.lhs;
      const PString& o = side ? e.lhs : e.rhs;
      if (std::any_of(g.begin(), g.end(), [](const PSym& x) { return x.var; })) continue;
      // g is ground: o can neither be longer nor use a constant more often.
      long max_len = 0;
      std::map<int, int> count;
      for (const auto& x : g) ++count[x.id];
      for (const auto& x : o) {
        if (x.var) {
          auto it = ub_.find(x.id);
          max_len += it == ub_.end() ? 0 : it->second;
        } else {
          ++max_len;
          if (--count[x.id] < 0) return false;
        }
      }
      if (max_len < static_cast<long>(g.size())) return false;
    }
    return true;
  }

  static std::vector<std::vector<PrefixEquation>> components(std::vector<PrefixEquation>& eqs) {
    const int n = static_cast<int>(eqs.size());
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::map<int, int> owner;
    for (int i = 0; i < n; ++i)
      for (const auto* side : {&eqs[i].lhs, &eqs[i].rhs})
        for (const auto& x : *side) {
          if (!x.var) continue;
          auto [it, inserted] = owner.emplace(x.id, i);
          if (!inserted) parent[find(i)] = find(it->second);
        }
    std::map<int, std::vector<PrefixEquation>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(std::move(eqs[i]));
    std::vector<std::vector<PrefixEquation>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
  }

  std::string canonical(const std::vector<PrefixEquation>& eqs) const {
    std::map<int, int> names;
    std::string key;
    for (const auto& e : eqs) {
      for (const auto* side : {&e.lhs, &e.rhs}) {
        for (const auto& x : *side) {
          if (x.var) {
            auto [it, inserted] = names.emplace(x.id, static_cast<int>(names.size()));
            key += 'V' + std::to_string(it->second);
            if (inserted) key += '/' + std::to_string(ub_.at(x.id));
          } else {
            key += 'a' + std::to_string(x.id);
          }
          key += ' ';
        }
        key += '|';
      }
      key += ';';
    }
    return key;
  }

  PString resolve(int var) const {
    for (auto it = trail_.rbegin(); it != trail_.rend(); ++it) {
      if (it->first != var) continue;
      PString out;
      for (const auto& x : it->second) {
        if (!x.var) {
          out.push_back(x);
          continue;
        }
        PString sub = resolve(x.id);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    return {};
  }

  Deadline* dl_;
  int next_ = 0;
  std::map<int, int> ub_;
  std::vector<std::pair<int, PString>> trail_;
  std::set<std::string> failed_;
};

std::set<int> vars_of(const std::vector<PrefixEquation>& eqs) {
  std::set<int> out;
  for (const auto& e : eqs) {
    for (const auto& x : e.lhs)
      if (x.var) out.insert(x.id);
    for (const auto& x : e.rhs)
      if (x.var) out.insert(x.id);
  }
  return out;
}

}  // namespace

std::optional<PrefixSolution> prefix_unify(const std::vector<PrefixEquation>& eqs, Deadline* deadline) {
  FirstSolver solver(eqs, deadline);
  if (!solver.solve(eqs)) return std::nullopt;
  return solver.solution(vars_of(eqs));
}

std::set<PrefixSolution> prefix_unify_all(const std::vector<PrefixEquation>& eqs) {
  const auto vars = vars_of(eqs);
  const int bound = prefix_bound(eqs);
  std::set<PSym> alphabet;
  for (const auto& e : eqs) {
    for (const auto& x : e.lhs)
      if (!x.var) alphabet.insert(x);
    for (const auto& x : e.rhs)
      if (!x.var) alphabet.insert(x);
  }
  const std::vector<PSym> letters(alphabet.begin(), alphabet.end());

  std::set<PrefixSolution> out;
  Solver solver(eqs, nullptr);
  solver.run([&](const std::map<int, PString>& sigma, const std::map<int, int>& ub) {
    // Open variables range over every string within their bound.
    std::vector<int> open;
    for (int v : vars)
      if (!sigma.count(v)) open.push_back(v);
    for (const auto& [v, s] : sigma)
      for (const auto& x : s)
        if (x.var && std::find(open.begin(), open.end(), x.id) == open.end()) open.push_back(x.id);

    PrefixSolution ground;
    std::function<void(std::size_t)> expand = [&](std::size_t i) {
      if (i == open.size()) {
        PrefixSolution s;
        for (int v : vars) {
          auto it = sigma.find(v);
          s[v] = apply_prefix(ground, it == sigma.end() ? PString{PSym{true, v}} : it->second);
          if (static_cast<int>(s[v].size()) > bound) return;
        }
        out.insert(std::move(s));
        return;
      }
      auto it = ub.find(open[i]);
      int limit = it == ub.end() ? bound : it->second;
      PString cur;
      std::function<void()> grow = [&] {
        ground[open[i]] = cur;
        expand(i + 1);
        if (static_cast<int>(cur.size()) >= limit) return;
        for (const auto& c : letters) {
          cur.push_back(c);
          grow();
          cur.pop_back();
        }
      };
      grow();
    };
    expand(0);
    return false;
  });
  return out;
}

std::string to_string(const PString& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << (p[i].var ? 'V' : 'a') << p[i].id;
  return os.str();
}

}  // namespace hat
