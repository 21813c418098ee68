#include "doctest.h"

#include "hat/term.hpp"

using namespace hat;

TEST_CASE("unify binds variables and undoes on failure") {
  Bindings b;
  auto x = make_var(0, "X"), y = make_var(1, "Y");
  auto fxa = make_fun("f", {x, make_fun("a")});
  auto fby = make_fun("f", {make_fun("b"), y});
  REQUIRE(unify(fxa, fby, b));
  CHECK(to_string(b.resolve(x)) == "b");
  CHECK(to_string(b.resolve(y)) == "a");

  Bindings c;
  auto m = c.mark();
  CHECK_FALSE(unify(make_fun("f", {x, x}), make_fun("f", {make_fun("a"), make_fun("b")}), c));
  CHECK(c.mark() == m);
}

TEST_CASE("occurs check") {
  Bindings b;
  auto x = make_var(0, "X");
  CHECK_FALSE(unify(x, make_fun("f", {x}), b));
  CHECK(unify(x, x, b));
}

TEST_CASE("undo restores earlier bindings") {
  Bindings b;
  auto x = make_var(0), y = make_var(1);
  auto m = b.mark();
  REQUIRE(unify(x, y, b));
  CHECK(identical(x, y, b));
  b.undo(m);
  CHECK_FALSE(identical(x, y, b));
}

TEST_CASE("unify_occurs agrees with the trail version") {
  auto x = make_var(0), y = make_var(1);
  auto s = unify_occurs(make_fun("g", {x, make_fun("h", {y})}), make_fun("g", {make_fun("c"), make_fun("h", {x})}));
  REQUIRE(s);
  CHECK(to_string(s->apply(y)) == "c");
  CHECK_FALSE(unify_occurs(x, make_fun("f", {x})));
}

TEST_CASE("skolem terms are keyed by site and arguments") {
  auto x = make_var(3);
  CHECK(term_equal(skolem_term("s1", {x}), skolem_term("s1", {x})));
  CHECK_FALSE(term_equal(skolem_term("s1", {x}), skolem_term("s2", {x})));
  CHECK(is_skolem_symbol(skolem_term("s1", {})->name));
  CHECK_FALSE(is_skolem_symbol("f"));
}

TEST_CASE("fresh_copy renames consistently and respects frozen variables") {
  VarPool pool(10);
  auto x = make_var(0), y = make_var(1);
  std::map<int, TermPtr> ren;
  auto t = fresh_copy(make_fun("f", {x, y, x}), {1}, pool, ren);
  CHECK(t->args[0]->var == t->args[2]->var);
  CHECK(t->args[0]->var >= 10);
  CHECK(t->args[1]->var == 1);
}
