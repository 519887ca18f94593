#include <doctest.h>

#include "hymc/automata_ops.hpp"
#include "support.hpp"

using namespace hymc;
using namespace testsup;

TEST_CASE("complement of the universal automaton is empty") {
  Nba u = Nba::universal(1, aps(2));
  CHECK(emptiness(complement(u)).empty);
}

TEST_CASE("complement of the empty automaton is universal (sampled)") {
  Nba e = Nba::empty(1, aps(2));
  Nba c = complement(e);
  for (uint64_t seed = 0; seed < 50; ++seed)
    CHECK(member(c, random_lasso(1, 2, 3, 3, seed)));
}

TEST_CASE("membership XOR on 200 random automata, 50 lassos each") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Nba a = random_nba(5, 1, 2, seed * 17 + 5);
    Nba c = complement(a);
    for (uint64_t s = 0; s < 50; ++s) {
      LassoWord w = random_lasso(1, 2, 2, 3, seed * 777 + s);
      CHECK(member(a, w) != member(c, w));
    }
  }
}

TEST_CASE("intersect(a, complement(a)) is empty (100 random)") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Nba a = random_nba(5, 1, 2, seed * 29 + 11);
    CHECK(emptiness(intersect(a, complement(a))).empty);
  }
}

TEST_CASE("double complement preserves sampled membership") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    Nba a = random_nba(4, 1, 2, seed * 41 + 1);
    Nba cc = complement(complement(a));
    for (uint64_t s = 0; s < 20; ++s) {
      LassoWord w = random_lasso(1, 2, 2, 2, seed * 99 + s);
      CHECK(member(a, w) == member(cc, w));
    }
  }
}

TEST_CASE("complement respects the state cap") {
  Nba a = random_nba(6, 1, 2, 4242);
  Limits limits;
  limits.state_cap = 2;
  CHECK_THROWS_AS(complement(a, limits), ResourceLimitError);
}

TEST_CASE("complement works on arity-2 symbolic alphabets") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Nba a = random_nba(4, 2, 2, seed * 53 + 2);
    Nba c = complement(a);
    validate(c);
    for (uint64_t s = 0; s < 20; ++s) {
      LassoWord w = random_lasso(2, 2, 2, 2, seed * 111 + s);
      CHECK(member(a, w) != member(c, w));
    }
  }
}
