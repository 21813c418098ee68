#include "doctest.h"

#include "hat/embedding.hpp"
#include "hat/parser.hpp"

using namespace hat;

TEST_CASE("axiom counts for the paper formulas") {
  CHECK(ht_axioms(parse_native("(p => q) ; (q => p)")).size() == 6);
  CHECK(ht_axioms(parse_native("ex Y: all X: (p(Y) => p(X))")).size() == 3);
}

TEST_CASE("HOS instances for one atom skip G = H") {
  VarPool pool;
  auto hos = hos_instances({{"p", 0}}, pool);
  // G in {p, ~p}, H = p, G = p skipped.
  CHECK(hos.size() == 1);
  for (const auto& a : hos) CHECK(free_vars(a).empty());
}

TEST_CASE("SQHT only for predicates with arguments") {
  VarPool pool;
  CHECK(sqht_instances({{"p", 0}}, pool).empty());
  auto s = sqht_instances({{"p", 1}, {"q", 2}}, pool);
  // G ranges over P(x..) and ~P(x..).
  CHECK(s.size() == 4);
  for (const auto& a : s) CHECK(a->op == Op::Exists);
}

TEST_CASE("embedding wraps the goal in an implication") {
  FormulaPtr f = parse_native("p ; ~p");
  FormulaPtr e = embed(f);
  REQUIRE(e->op == Op::Imp);
  CHECK(formula_equal(e->rhs, f));
  CHECK(free_vars(e).empty());
}

TEST_CASE("signature in order of first occurrence") {
  auto sig = signature_of(parse_native("q(a) => p"));
  REQUIRE(sig.size() == 2);
  CHECK(sig[0] == std::pair<std::string, int>{"q", 1});
  CHECK(sig[1] == std::pair<std::string, int>{"p", 0});
}
