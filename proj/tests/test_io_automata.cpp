#include <doctest.h>

#include "hymc/io_automata.hpp"
#include "support.hpp"

using namespace hymc;
using namespace testsup;

TEST_CASE("hoa-like round-trip preserves sampled membership (100 seeds)") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Nba a = random_nba(6, 2, 2, seed * 7 + 3);
    Nba b = import_hoa_like(export_hoa_like(a));
    CHECK(b.arity == a.arity);
    CHECK(b.aps == a.aps);
    CHECK(b.num_states() == a.num_states());
    for (uint64_t s = 0; s < 15; ++s) {
      LassoWord w = random_lasso(2, 2, 2, 2, seed * 301 + s);
      CHECK(member(a, w) == member(b, w));
    }
  }
}

TEST_CASE("hoa-like rejects malformed input") {
  CHECK_THROWS_AS(import_hoa_like("States: 1\n"), ParseError);
  CHECK_THROWS_AS(import_hoa_like("HOA-ish: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\n--BODY--\n"),
                  ParseError);  // AP name without @index
}

TEST_CASE("ba export: universal automaton lists every letter as a self-loop") {
  Nba u = Nba::universal(2, aps(2));  // 2^(2*2) = 16 letters
  std::string ba = export_ba(u);
  size_t lines = 0;
  for (char c : ba) lines += c == '\n';
  // 1 initial line + 16 transitions + 1 accepting line
  CHECK(lines == 18);
}

TEST_CASE("ba export refuses large alphabets") {
  Nba a = Nba::universal(3, aps(6));  // 18 flat propositions
  CHECK(a.flat_props() == 18);
  try {
    export_ba(a);
    CHECK(false);
  } catch (const ResourceLimitError& e) {
    CHECK(std::string(e.what()).find("alphabet too large") != std::string::npos);
  }
}

TEST_CASE("ba round-trip preserves emptiness and sampled letters") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    Nba a = random_nba(5, 1, 2, seed * 19 + 1);
    Nba b = import_ba(export_ba(a), a.flat_props());
    CHECK(emptiness(a).empty == emptiness(b).empty);
    for (uint64_t s = 0; s < 10; ++s) {
      LassoWord w = random_lasso(1, 2, 2, 2, seed * 77 + s);
      LassoWord v = w;  // same letters over the synthetic b0,b1 alphabet
      CHECK(member(a, w) == member(b, v));
    }
  }
}

TEST_CASE("ba export folds multiple initial states into a fresh one") {
  Nba a = Nba::empty(1, aps(1));
  a.add_state(true);
  a.add_state(false);
  a.initial = {0, 1};
  a.add_edge(0, Guard::truth(), 0);
  a.add_edge(1, Guard::truth(), 0);
  Nba b = import_ba(export_ba(a), a.flat_props());
  CHECK(emptiness(a).empty == emptiness(b).empty);
  for (uint64_t s = 0; s < 10; ++s) {
    LassoWord w = random_lasso(1, 1, 2, 2, s);
    CHECK(member(a, w) == member(b, w));
  }
}
