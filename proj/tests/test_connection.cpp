#include "doctest.h"

#include "hat/connection.hpp"
#include "hat/embedding.hpp"
#include "hat/lj.hpp"
#include "hat/oracle.hpp"
#include "hat/parser.hpp"
#include "support.hpp"

using namespace hat;

namespace {

ConnResult conn(const FormulaPtr& f, double seconds = 2, ConnConfig cfg = {}) {
  Deadline dl(seconds);
  return prove_connection(f, cfg, dl);
}

// Every connection of the proof is complementary under the term and prefix
// substitutions.
void check_complementary(const ConnResult& r) {
  REQUIRE(!r.connections.empty());
  for (const auto& c : r.connections) {
    REQUIRE(c.args1.size() == c.args2.size());
    for (std::size_t i = 0; i < c.args1.size(); ++i) CHECK(term_equal(c.args1[i], c.args2[i]));
    CHECK(apply_prefix(r.prefix_solution, c.prefix1) == apply_prefix(r.prefix_solution, c.prefix2));
  }
}

}  // namespace

TEST_CASE("paper example: p => p is valid, p ; ~p is not proved") {
  ConnResult r = conn(parse_native("p => p"));
  REQUIRE(r.status == Status::Proved);
  check_complementary(r);
  CHECK(conn(parse_native("p ; ~p"), 0.5).status != Status::Proved);
}

TEST_CASE("intuitionistic theorems, with and without the optimizations") {
  const char* theorems[] = {"~~(p ; ~p)", "~~(~~p => p)", "(p => q) => (~q => ~p)", "(p , q) => (q , p)",
                            "(all X: (p(X) => q(X))) => ((all X: p(X)) => (all X: q(X)))",
                            "(ex X: (p(X) , q(X))) => (ex X: p(X))", "~(ex X: p(X)) => (all X: ~p(X))"};
  for (bool reg : {true, false})
    for (bool rb : {true, false}) {
      ConnConfig cfg;
      cfg.regularity = reg;
      cfg.restricted_backtracking = rb;
      for (const char* s : theorems) {
        ConnResult r = conn(parse_native(s), 2, cfg);
        CHECK_MESSAGE(r.status == Status::Proved, s);
        if (r.status == Status::Proved) check_complementary(r);
      }
    }
}

TEST_CASE("classical theorems are not proved") {
  for (const char* s : {"~~p => p", "((p => q) => p) => p", "(p => q) ; (q => p)", "ex Y: all X: (p(Y) => p(X))"})
    CHECK_MESSAGE(conn(parse_native(s), 0.3).status != Status::Proved, s);
}

TEST_CASE("the embedding proves the HT paper formulas") {
  for (const char* s : {"(p => q) ; (q => p)", "ex Y: all X: (p(Y) => p(X))", "~p ; ~~p"}) {
    ConnResult r = conn(embed(parse_native(s)));
    CHECK_MESSAGE(r.status == Status::Proved, s);
    if (r.status == Status::Proved) check_complementary(r);
  }
}

TEST_CASE("conn agrees with lj on intuitionistic validity") {
  // conn never refutes, so formulas lj refutes only get a short budget.
  for (const auto& f : test::formulas_up_to(7, {"p", "q"})) {
    Deadline dl(5);
    const bool valid = prove_lj(f, {}, dl).status == Status::Proved;
    ConnResult r = conn(f, valid ? 2 : 0.005);
    CHECK_MESSAGE((r.status == Status::Proved) == valid, to_native(f));
    if (r.status == Status::Proved) check_complementary(r);
  }
}
