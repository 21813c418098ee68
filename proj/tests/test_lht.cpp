#include "doctest.h"

#include "hat/lht.hpp"
#include "hat/oracle.hpp"
#include "hat/parser.hpp"
#include "support.hpp"

using namespace hat;

namespace {

LhtResult lht(const char* text, double seconds = 5) {
  Deadline dl(seconds);
  return prove_lht(parse_native(text), {}, dl);
}

}  // namespace

TEST_CASE("rule numbers follow the rule table") {
  auto f = [](const char* s) { return parse_native(s); };
  CHECK(rule_number(f("p , q"), 1) == 1);
  CHECK(rule_number(f("p ; q"), 0) == 2);
  CHECK(rule_number(f("p => q"), 1) == 14);
  CHECK(rule_number(f("p => q"), 0) == 13);
  CHECK(rule_number(f("~(p ; q)"), 0) == 11);
  CHECK(rule_number(f("~~p"), 1) == 6);
  CHECK(rule_number(f("p"), 1) == 0);
  CHECK(rule_number(f("~p"), 0) == 0);
}

TEST_CASE("paper formulas") {
  for (const char* s : {"(p => q) ; (q => p)", "~p ; ~~p", "(p ; p) => p"}) {
    LhtResult r = lht(s);
    REQUIRE(r.status == Status::Proved);
    CHECK(test::check_lht_proof(parse_native(s), r.proof) == "");
  }
  CHECK(lht("p ; ~p").status == Status::Refuted);
  CHECK(lht("~p ; ~(p ; p)").status == Status::Refuted);
}

TEST_CASE("first-order proofs pass the checker") {
  for (const char* s : {"ex Y: all X: (p(Y) => p(X))", "ex Y: ((ex X: p(X)) => p(Y))",
                        "(all X: (p(X) => q(X))) => ((all X: p(X)) => (all X: q(X)))"}) {
    LhtResult r = lht(s);
    REQUIRE(r.status == Status::Proved);
    CHECK(test::check_lht_proof(parse_native(s), r.proof) == "");
  }
}

TEST_CASE("first-order refutation through a finite countermodel") {
  LhtResult r = lht("(all X: ex Y: p(X,Y)) => (ex Y: all X: p(X,Y))");
  CHECK(r.status == Status::Refuted);
  CHECK(r.countermodel);
}

TEST_CASE("the checker rejects a tampered proof") {
  FormulaPtr f = parse_native("(p ; p) => p");
  LhtResult r = lht("(p ; p) => p");
  REQUIRE(r.status == Status::Proved);
  auto bad = r.proof;
  bad[0].rule = 14;
  bad[0].premises = 3;
  CHECK(test::check_lht_proof(f, bad) != "");
  bad = r.proof;
  bad.pop_back();
  CHECK(test::check_lht_proof(f, bad) != "");
}

TEST_CASE("timeout") {
  Deadline dl(0.0);
  LhtResult r = prove_lht(parse_native("(all X: ex Y: (p(X) => p(Y) , q(Y))) => ex Z: q(Z)"), {}, dl);
  CHECK(r.status == Status::Timeout);
}

TEST_CASE("lht matches the oracle on small formulas") {
  for (const auto& f : test::formulas_up_to(5, {"p", "q"})) {
    Deadline dl(5);
    LhtResult r = prove_lht(f, {}, dl);
    CHECK((r.status == Status::Proved) == ht_valid_prop(f));
    if (r.status == Status::Proved) CHECK(test::check_lht_proof(f, r.proof) == "");
  }
}
