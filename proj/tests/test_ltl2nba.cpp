#include <doctest.h>

#include "hymc/ltl2nba.hpp"
#include "support.hpp"

using namespace hymc;
using namespace testsup;

namespace {

Nba translate(const LtlRef& body, const std::vector<std::string>& vars, int ap_count) {
  return ltl_to_nba(to_nnf(body), vars, aps(ap_count));
}

LassoWord word1(std::vector<uint64_t> stem, std::vector<uint64_t> loop, int ap_count) {
  LassoWord w;
  w.arity = 1;
  w.ap_count = ap_count;
  w.stem = std::move(stem);
  w.loop = std::move(loop);
  return w;
}

}  // namespace

TEST_CASE("true translates to a universal automaton") {
  Nba a = translate(ltl::tt(), {"p"}, 1);
  CHECK(a.num_states() == 1);
  for (uint64_t seed = 0; seed < 30; ++seed)
    CHECK(member(a, random_lasso(1, 1, 3, 3, seed)));
}

TEST_CASE("false translates to the empty language") {
  Nba a = translate(ltl::ff(), {"p"}, 1);
  CHECK(emptiness(a).empty);
}

TEST_CASE("G a accepts {a}^omega and rejects {a}{}^omega") {
  Nba a = translate(ltl::globally(ltl::atom("a", "p")), {"p"}, 1);
  CHECK(member(a, word1({}, {1}, 1)));
  CHECK(!member(a, word1({1}, {0}, 1)));
}

TEST_CASE("a U b examples") {
  Nba a = translate(ltl::until(ltl::atom("a", "p"), ltl::atom("b", "p")), {"p"}, 1);
  CHECK(member(a, word1({0b01, 0b01}, {0b10}, 2)));  // a a then b forever
  CHECK(!member(a, word1({}, {0b01}, 2)));           // a forever, no b
}

TEST_CASE("translation fidelity: 1000+ random (body, lasso) pairs, 1 variable") {
  std::vector<std::string> vars{"p"};
  for (uint64_t seed = 0; seed < 600; ++seed) {
    LtlRef body = bench::gen_ltl_body(1 + seed % 10, 2, vars, seed);
    Nba a = translate(body, vars, 2);
    auto asg = random_assignment(vars, 2, 3, 3, seed * 3 + 1);
    CHECK(member(a, asg.zipped()) == oracle::eval(body, asg));
  }
}

TEST_CASE("translation fidelity: 2 variables (product alphabet)") {
  std::vector<std::string> vars{"p", "q"};
  for (uint64_t seed = 0; seed < 500; ++seed) {
    LtlRef body = bench::gen_ltl_body(1 + seed % 10, 2, vars, seed ^ 0x5a5a);
    Nba a = translate(body, vars, 2);
    auto asg = random_assignment(vars, 2, 3, 3, seed * 5 + 2);
    CHECK(member(a, asg.zipped()) == oracle::eval(body, asg));
  }
}

TEST_CASE("translation requires NNF") {
  CHECK_THROWS_AS(
      ltl_to_nba(ltl::make_not(ltl::globally(ltl::atom("a", "p"))), {"p"}, aps(1)),
      ValidationError);
}

TEST_CASE("guards keep DNF invariants in translated automata") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    LtlRef body = bench::gen_ltl_body(1 + seed % 8, 2, {"p", "q"}, seed);
    Nba a = translate(body, {"p", "q"}, 2);
    validate(a);  // checks contradictory cubes, ranges, stored-false guards
  }
}
