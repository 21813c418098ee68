#include "doctest.h"

#include "hat/lj.hpp"
#include "hat/oracle.hpp"
#include "hat/parser.hpp"
#include "support.hpp"

using namespace hat;

namespace {

Status lj(const char* text, double seconds = 5) {
  Deadline dl(seconds);
  return prove_lj(parse_native(text), {}, dl).status;
}

}  // namespace

TEST_CASE("intuitionistic theorems") {
  for (const char* s : {"p => p", "p => ~~p", "~~(p ; ~p)", "~~(~~p => p)", "(p ; q) => (q ; p)",
                        "(p => q) => (~q => ~p)", "~(p ; q) => (~p , ~q)"})
    CHECK_MESSAGE(lj(s) == Status::Proved, s);
}

TEST_CASE("classical but not intuitionistic") {
  for (const char* s : {"p ; ~p", "~~p => p", "(p => q) ; (q => p)", "((p => q) => p) => p", "~(p , q) => (~p ; ~q)"})
    CHECK_MESSAGE(lj(s) == Status::Refuted, s);
}

TEST_CASE("first order") {
  CHECK(lj("(all X: (p(X) => q(X))) => ((all X: p(X)) => (all X: q(X)))") == Status::Proved);
  CHECK(lj("(ex X: (p(X) , q(X))) => (ex X: p(X))") == Status::Proved);
  CHECK(lj("ex Y: all X: (p(Y) => p(X))", 1) != Status::Proved);
}

TEST_CASE("lj proofs are HT proofs on small formulas") {
  for (const auto& f : test::formulas_up_to(5, {"p", "q"})) {
    Deadline dl(5);
    Status s = prove_lj(f, {}, dl).status;
    CHECK(s != Status::Timeout);
    if (s == Status::Proved) CHECK(ht_valid_prop(f));
  }
}
