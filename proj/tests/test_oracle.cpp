#include "doctest.h"

#include "hat/oracle.hpp"
#include "hat/parser.hpp"

using namespace hat;

TEST_CASE("eval_ht on a two-world model") {
  FormulaPtr em = parse_native("p ; ~p");
  HTInterpretation i{{}, {"p"}};
  CHECK_FALSE(eval_ht(em, i, World::Here));
  CHECK(eval_ht(em, i, World::There));
  CHECK(eval_ht(parse_native("~p ; ~~p"), i, World::Here));
}

TEST_CASE("ht_check_prop finds the countermodel of excluded middle") {
  HTCheck c = ht_check_prop(parse_native("p ; ~p"));
  CHECK_FALSE(c.valid);
  REQUIRE(c.countermodel);
  CHECK(c.countermodel->here.empty());
  CHECK(c.countermodel->there == std::set<std::string>{"p"});
}

TEST_CASE("HT sits between intuitionistic and classical logic") {
  CHECK(ht_valid_prop(parse_native("(p => q) ; (q => p)")));
  CHECK(ht_valid_prop(parse_native("(p ; p) => p")));
  CHECK_FALSE(ht_valid_prop(parse_native("~p ; ~(p ; p)")));
  CHECK(classical_valid_prop(parse_native("p ; ~p")));
  CHECK_FALSE(classical_valid_prop(parse_native("p => q")));
}

TEST_CASE("quantifiers are rejected by the propositional oracle") {
  CHECK_THROWS_AS(eval_ht(parse_native("all X: p(X)"), {}, World::Here), std::invalid_argument);
}

TEST_CASE("finite first-order countermodel") {
  Deadline dl(5);
  auto cm = find_fo_countermodel(parse_native("(all X: ex Y: p(X,Y)) => (ex Y: all X: p(X,Y))"), {}, dl);
  CHECK(cm);
  Deadline dl2(5);
  CHECK_FALSE(find_fo_countermodel(parse_native("ex Y: all X: (p(Y) => p(X))"), {}, dl2));
}
