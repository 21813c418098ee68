#include "doctest.h"

#include "hat/matrix.hpp"
#include "hat/parser.hpp"
#include "hat/prefix.hpp"
#include "support.hpp"

using namespace hat;

namespace {

PSym V(int i) { return {true, i}; }
PSym a(int i) { return {false, i}; }

}  // namespace

TEST_CASE("matrix golden tests") {
  CHECK(to_string(build_matrix(parse_native("p => p"))) == "{{p^1:a1 V1}, {p^0:a1 a2}}");
  CHECK(to_string(build_matrix(parse_native("p ; ~p"))) == "{{p^0:a1}, {p^1:a2 V1}}");
}

TEST_CASE("matrix of a quantified formula") {
  PrefixMatrix m = build_matrix(parse_native("ex Y: all X: (p(Y) => p(X))"));
  CHECK(m.literal_count() == 2);
  CHECK(m.skolems.size() == 1);
  CHECK(m.gammas.size() == 1);
  CHECK_THROWS_AS(build_matrix(atom("p", {make_var(0)})), std::invalid_argument);
}

TEST_CASE("paper prefix examples") {
  // a1 V1 = a1 a2 unifies with V1 = a2.
  auto s = prefix_unify({{{a(1), V(1)}, {a(1), a(2)}}});
  REQUIRE(s);
  CHECK(s->at(1) == PString{a(2)});
  // a1 and a2 V1 do not.
  CHECK_FALSE(prefix_unify({{{a(1)}, {a(2), V(1)}}}));
}

TEST_CASE("solutions satisfy the system") {
  std::vector<PrefixEquation> eqs = {{{V(0), a(0)}, {a(1), V(1)}}, {{V(1), V(2)}, {a(0), a(2)}}};
  auto s = prefix_unify(eqs);
  REQUIRE(s);
  CHECK(satisfies(*s, eqs));
  CHECK(prefix_bound(eqs) == 4);
}

TEST_CASE("prefix_unify_all agrees with brute force") {
  for (const auto& eqs : test::prefix_systems(300, 11)) {
    auto brute = test::brute_force_solutions(eqs);
    CHECK(prefix_unify_all(eqs) == brute);
    CHECK(prefix_unify(eqs).has_value() == !brute.empty());
  }
}

TEST_CASE("deadline") {
  Deadline dl(0.0);
  CHECK_THROWS_AS(prefix_unify({{{V(0), a(0)}, {a(0), V(0)}}}, &dl), TimeoutError);
}
