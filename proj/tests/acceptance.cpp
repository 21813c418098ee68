// One PASS/FAIL line per acceptance criterion. Exit status is the number
// of failed criteria.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "hat/connection.hpp"
#include "hat/embedding.hpp"
#include "hat/lht.hpp"
#include "hat/lj.hpp"
#include "hat/matrix.hpp"
#include "hat/oracle.hpp"
#include "hat/parser.hpp"
#include "hat/prefix.hpp"
#include "hat/runner.hpp"
#include "hat/stack.hpp"
#include "support.hpp"

using namespace hat;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (!pass) detail << "; ";
    pass = false;
    detail << what;
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* kF1 = "(p => q) ; (q => p)";
const char* kF2 = "ex Y: all X: (p(Y) => p(X))";
const char* kF4 = "p ; ~p";

RunResult run(const std::string& text, Backend b, double timeout) {
  FormulaPtr f = parse_native(text);
  RunConfig cfg;
  cfg.backend = b;
  cfg.timeout = timeout;
  return run_goal(text, is_embedding(b) ? embed(f) : f, cfg);
}

// Backend gives the verdict, and in under a second when `fast`.
void expect_verdict(Outcome& o, const std::string& text, Backend b, Verdict want, bool fast = true) {
  RunResult r = run(text, b, fast ? 1 : 10);
  std::string tag = std::string(to_string(b)) + " " + text;
  o.expect(r.verdict == want, tag + ": " + to_string(r.verdict) + ", want " + to_string(want));
}

Outcome criterion1() {
  Outcome o;
  const Verdict T = Verdict::Theorem, N = Verdict::NonTheorem;
  for (const char* f : {kF1, kF2, "~p ; ~~p", "(p ; p) => p", "ex Y: ((ex X: p(X)) => p(Y))"})
    expect_verdict(o, f, Backend::Lht, T);
  for (const char* f : {kF4, "~p ; ~(p ; p)", "(all X: ex Y: p(X,Y)) => (ex Y: all X: p(X,Y))"})
    expect_verdict(o, f, Backend::Lht, N);
  expect_verdict(o, "p => p", Backend::Lj, T);
  expect_verdict(o, kF1, Backend::Lj, N);
  expect_verdict(o, kF4, Backend::Lj, N);
  expect_verdict(o, "p => p", Backend::Conn, T);
  RunResult f4 = run(kF4, Backend::Conn, 1);
  o.expect(f4.verdict != T, std::string("conn F4: ") + to_string(f4.verdict));
  for (Backend b : {Backend::LjHt, Backend::ConnHt}) {
    expect_verdict(o, kF1, b, T);
    expect_verdict(o, kF2, b, T);
    RunResult r = run(kF4, b, 10);
    o.expect(r.verdict != T, std::string(to_string(b)) + " F4: Theorem");
  }
  if (o.pass) o.detail << "18 paper-formula cases";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto n1 = ht_axioms(parse_native(kF1)).size();
  const auto n2 = ht_axioms(parse_native(kF2)).size();
  o.expect(n1 == 6, "F1 has " + std::to_string(n1) + " axioms");
  o.expect(n2 == 3, "F2 has " + std::to_string(n2) + " axioms");
  if (o.pass) o.detail << "|AxiomsHT| = 6 and 3";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const std::string m3 = to_string(build_matrix(parse_native("p => p")));
  const std::string m4 = to_string(build_matrix(parse_native(kF4)));
  o.expect(m3 == "{{p^1:a1 V1}, {p^0:a1 a2}}", "M(F3) = " + m3);
  o.expect(m4 == "{{p^0:a1}, {p^1:a2 V1}}", "M(F4) = " + m4);
  if (o.pass) o.detail << "M(F3) = " << m3 << ", M(F4) = " << m4;
  return o;
}

// Verdicts of each prover on the propositional corpus, computed once.
struct CorpusRun {
  std::vector<Status> lht, lj, lj_ht, conn_ht;
  std::vector<bool> ht, classical;
  int bad_proofs = 0;
  std::string first_bad;
};

Status lj_status(const FormulaPtr& f, double seconds) {
  Deadline dl(seconds);
  return prove_lj(f, {}, dl).status;
}

const CorpusRun& corpus_run() {
  static const CorpusRun run = [] {
    CorpusRun r;
    const auto& fs = test::prop_corpus();
    for (const auto& f : fs) {
      r.ht.push_back(ht_valid_prop(f));
      r.classical.push_back(classical_valid_prop(f));
      Deadline dl(10);
      LhtResult l = prove_lht(f, {}, dl);
      r.lht.push_back(l.status);
      if (l.status == Status::Proved) {
        std::string why = test::check_lht_proof(f, l.proof);
        if (!why.empty() && r.bad_proofs++ == 0) r.first_bad = to_native(f) + ": " + why;
      }
      r.lj.push_back(lj_status(f, 10));
      FormulaPtr e = embed(f);
      r.lj_ht.push_back(lj_status(e, 0.01));
      Deadline cd(0.01);
      r.conn_ht.push_back(prove_connection(e, {}, cd).status);
    }
    return r;
  }();
  return run;
}

Outcome criterion4() {
  Outcome o;
  const auto& fs = test::prop_corpus();
  const auto& r = corpus_run();
  int mismatches = 0;
  std::string first;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const bool ok = r.ht[i] ? r.lht[i] == Status::Proved : r.lht[i] == Status::Refuted;
    if (!ok && mismatches++ == 0) first = to_native(fs[i]) + " -> " + to_string(r.lht[i]);
  }
  o.expect(mismatches == 0, std::to_string(mismatches) + " mismatches, first " + first);
  o.expect(r.bad_proofs == 0, std::to_string(r.bad_proofs) + " rejected proofs, first " + r.first_bad);
  if (o.pass) o.detail << fs.size() << " formulas, 0 mismatches, all proofs checked";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto& fs = test::prop_corpus();
  const auto& r = corpus_run();
  int lj_lht = 0, lht_cl = 0, lj_undecided = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const bool lj = r.lj[i] == Status::Proved, lht = r.lht[i] == Status::Proved;
    if (lj && !lht) ++lj_lht;
    if (lht && !r.classical[i]) ++lht_cl;
    if (r.lj[i] != Status::Proved && r.lj[i] != Status::Refuted) ++lj_undecided;
  }
  o.expect(lj_lht == 0, std::to_string(lj_lht) + " lj proofs outside lht");
  o.expect(lht_cl == 0, std::to_string(lht_cl) + " lht proofs not classically valid");
  if (o.pass) o.detail << "0 violations, lj undecided on " << lj_undecided;
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto& fs = test::prop_corpus();
  const auto& r = corpus_run();
  int valid = 0, bad = 0, miss_lj = 0, miss_conn = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const bool lj = r.lj_ht[i] == Status::Proved, conn = r.conn_ht[i] == Status::Proved;
    if ((lj || conn) && !r.ht[i]) ++bad;
    if (!r.ht[i]) continue;
    ++valid;
    miss_lj += !lj;
    miss_conn += !conn;
  }
  o.expect(bad == 0, std::to_string(bad) + " embedding proofs of HT-invalid formulas");
  auto rate = [&](int miss) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", valid ? 100.0 * miss / valid : 0.0);
    return std::string(buf);
  };
  o.detail << (o.pass ? "" : "; ") << "miss rate on " << valid << " HT-valid: lj-ht " << miss_lj << " ("
           << rate(miss_lj) << "), conn-ht " << miss_conn << " (" << rate(miss_conn) << ")";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto systems = test::prefix_systems(5000, 7);
  int mismatches = 0, solvable = 0;
  std::string first;
  for (const auto& eqs : systems) {
    const auto brute = test::brute_force_solutions(eqs);
    const auto first_sol = prefix_unify(eqs);
    const auto all = prefix_unify_all(eqs);
    solvable += !brute.empty();
    const bool ok = first_sol.has_value() == !brute.empty() && (!first_sol || satisfies(*first_sol, eqs)) &&
                    all == brute;
    if (!ok && mismatches++ == 0) {
      std::ostringstream os;
      for (const auto& e : eqs) os << to_string(e.lhs) << " = " << to_string(e.rhs) << "  ";
      first = os.str();
    }
  }
  o.expect(mismatches == 0, std::to_string(mismatches) + " mismatches, first " + first);
  if (o.pass) o.detail << systems.size() << " systems (" << solvable << " solvable), 0 mismatches";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::filesystem::path root = HAT_SOURCE_DIR "/corpus/mini";
  const auto problems = collect_problems(root);
  o.expect(problems.size() == 30, "mini-corpus has " + std::to_string(problems.size()) + " problems");
  int runs = 0, proved = 0;
  for (Backend b : {Backend::Lht, Backend::Lj, Backend::LjHt, Backend::Conn, Backend::ConnHt}) {
    RunConfig cfg;
    cfg.backend = b;
    cfg.timeout = 1;
    cfg.axiom_root = root;
    Report rep = run_suite(problems, cfg);
    runs += rep.summary.total();
    proved += rep.summary.proved;
    for (const auto& row : rep.rows)
      o.expect(row.verdict != Verdict::Error, std::string(to_string(b)) + " " + row.problem + ": " + row.message);
  }
  if (o.pass) o.detail << runs << " runs over 5 backends, 0 errors, " << proved << " proved";
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  run_with_stack([&] {
    const std::pair<const char*, Outcome (*)()> criteria[] = {
        {"paper formulas", criterion1},        {"embedding axiom counts", criterion2},
        {"matrix golden tests", criterion3},   {"lht equals the HT oracle", criterion4},
        {"inclusion lj <= lht <= classical", criterion5}, {"embedding soundness", criterion6},
        {"prefix unification oracle", criterion7}, {"mini-corpus smoke run", criterion8},
    };
    int n = 0;
    for (const auto& [title, fn] : criteria) {
      ++n;
      const auto t0 = Clock::now();
      Outcome o = fn();
      failed += !o.pass;
      std::printf("%s criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.str().c_str(),
                  since(t0));
      std::fflush(stdout);
    }
  });
  return failed;
}
