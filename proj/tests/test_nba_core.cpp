#include <doctest.h>

#include "support.hpp"

using namespace hymc;
using namespace testsup;

TEST_CASE("guards: conjunction drops contradictory cubes") {
  Guard a = Guard::of(Cube{0b01, 0});
  Guard b = Guard::of(Cube{0, 0b01});
  CHECK(guard_and(a, b).is_false());
  Guard c = guard_and(a, Guard::of(Cube{0b10, 0}));
  REQUIRE(c.cubes.size() == 1);
  CHECK(c.cubes[0].pos == 0b11);
}

TEST_CASE("guards: normalization removes duplicates and absorbed cubes") {
  Guard g;
  g.cubes.push_back(Cube{0b1, 0});
  g.cubes.push_back(Cube{0b1, 0});
  g.cubes.push_back(Cube{0b11, 0});  // absorbed by the first
  g.cubes.push_back(Cube{0b100, 0b100});  // contradictory
  g.normalize();
  REQUIRE(g.cubes.size() == 1);
  CHECK(g.cubes[0].pos == 0b1);
}

TEST_CASE("guard_restrict partially evaluates one trace index") {
  // arity 2, 1 AP: props a@0 = bit0, a@1 = bit1
  Guard g = Guard::of(Cube{0b10, 0b01});  // a@1 & !a@0
  Guard r1 = guard_restrict(g, 1, 1, 0b1);  // a present at index 1
  REQUIRE(r1.cubes.size() == 1);
  CHECK(r1.cubes[0].pos == 0);
  CHECK(r1.cubes[0].neg == 0b01);
  Guard r0 = guard_restrict(g, 1, 1, 0);  // a absent: cube dies
  CHECK(r0.is_false());
}

TEST_CASE("emptiness: no accepting state") {
  Nba a = Nba::empty(1, aps(1));
  a.add_state(false);
  a.initial.push_back(0);
  a.add_edge(0, Guard::truth(), 0);
  CHECK(emptiness(a).empty);
}

TEST_CASE("emptiness: accepting initial self-loop") {
  Nba a = Nba::universal(1, aps(1));
  EmptinessResult r = emptiness(a);
  REQUIRE(!r.empty);
  CHECK(r.witness->stem.empty());
  REQUIRE(r.witness->loop.size() == 1);
  CHECK(r.witness->loop[0] == 0);  // first cube of truth, unmentioned props absent
}

TEST_CASE("emptiness witness is always a member (500 random nonempty)") {
  int nonempty = 0;
  for (uint64_t seed = 0; nonempty < 500; ++seed) {
    Nba a = random_nba(5, 1, 2, seed);
    EmptinessResult r = emptiness(a);
    if (r.empty) continue;
    ++nonempty;
    CHECK(member(a, *r.witness));
  }
}

TEST_CASE("emptiness agrees with explicit nested DFS (200 random)") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Nba a = random_nba(6, 1, 2, seed * 31 + 7);
    CHECK(emptiness(a).empty == !naive_nonempty(a));
  }
}

TEST_CASE("member: universal accepts everything") {
  Nba u = Nba::universal(2, aps(2));
  for (uint64_t seed = 0; seed < 50; ++seed)
    CHECK(member(u, random_lasso(2, 2, 3, 3, seed)));
}

TEST_CASE("member: invariant under loop unrolling") {
  for (uint64_t seed = 0; seed < 500; ++seed) {
    Nba a = random_nba(5, 1, 2, seed);
    LassoWord w = random_lasso(1, 2, 2, 3, seed ^ 0xabcd);
    LassoWord u = w;
    // stem . loop, loop . loop denotes the same word
    u.stem.insert(u.stem.end(), w.loop.begin(), w.loop.end());
    u.loop.insert(u.loop.end(), w.loop.begin(), w.loop.end());
    CHECK(member(a, w) == member(a, u));
  }
}

TEST_CASE("trim preserves sampled membership") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Nba a = random_nba(6, 1, 2, seed * 13 + 3);
    Nba b = trim(a);
    CHECK(b.num_states() <= a.num_states());
    for (uint64_t s2 = 0; s2 < 20; ++s2) {
      LassoWord w = random_lasso(1, 2, 2, 2, seed * 131 + s2);
      CHECK(member(a, w) == member(b, w));
    }
  }
}

TEST_CASE("validate rejects malformed automata") {
  Nba a = Nba::universal(1, aps(1));
  a.edges[0][0].dst = 5;
  CHECK_THROWS_AS(validate(a), ValidationError);
}
