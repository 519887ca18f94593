#pragma once

// Shared helpers for the test suites: seeded random instances and small
// reference implementations kept independent of the code under test.

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hymc/bench.hpp"
#include "hymc/nba.hpp"
#include "hymc/oracle.hpp"

namespace testsup {

using namespace hymc;

inline std::vector<std::string> aps(int k) { return bench::default_aps(k); }

inline LassoWord random_lasso(int arity, int ap_count, int max_stem, int max_loop,
                              uint64_t seed) {
  std::mt19937_64 rng(seed);
  LassoWord w;
  w.arity = arity;
  w.ap_count = ap_count;
  uint64_t letters = 1ull << (arity * ap_count);
  std::uniform_int_distribution<uint64_t> letter(0, letters - 1);
  std::uniform_int_distribution<int> stem_len(0, max_stem);
  std::uniform_int_distribution<int> loop_len(1, max_loop);
  int sl = stem_len(rng), ll = loop_len(rng);
  for (int i = 0; i < sl; ++i) w.stem.push_back(letter(rng));
  for (int i = 0; i < ll; ++i) w.loop.push_back(letter(rng));
  return w;
}

inline oracle::LassoAssignment random_assignment(const std::vector<std::string>& vars,
                                                 int ap_count, int max_stem, int max_loop,
                                                 uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::string, LassoWord>> parts;
  for (const auto& v : vars)
    parts.emplace_back(v, random_lasso(1, ap_count, max_stem, max_loop, rng()));
  return oracle::make_assignment(aps(ap_count), std::move(parts));
}

inline Nba random_nba(int max_states, int arity, int ap_count, uint64_t seed,
                      double acc_prob = 0.4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Nba a;
  a.arity = arity;
  a.aps = aps(ap_count);
  std::uniform_int_distribution<int> nd(1, max_states);
  int n = nd(rng);
  for (int i = 0; i < n; ++i) a.add_state(coin(rng) < acc_prob);
  a.initial.push_back(0);
  if (n > 1 && coin(rng) < 0.3) a.initial.push_back(1);

  const int props = arity * ap_count;
  std::uniform_int_distribution<int> dst(0, n - 1);
  std::uniform_int_distribution<int> edges_per_state(1, 3);
  for (int q = 0; q < n; ++q) {
    if (coin(rng) < 0.1) continue;  // the occasional dead state
    int k = edges_per_state(rng);
    for (int e = 0; e < k; ++e) {
      Cube c;
      for (int b = 0; b < props; ++b) {
        double r = coin(rng);
        if (r < 0.25)
          c.pos |= 1ull << b;
        else if (r < 0.5)
          c.neg |= 1ull << b;
      }
      a.add_edge(static_cast<uint32_t>(q), Guard::of(c), static_cast<uint32_t>(dst(rng)));
    }
  }
  return a;
}

// Reference emptiness: explicit-letter expansion plus a textbook nested DFS.
inline bool naive_nonempty(const Nba& a) {
  const size_t n = a.num_states();
  if (n == 0) return false;
  uint64_t letters = 1ull << a.flat_props();
  std::vector<std::set<uint32_t>> adj(n);
  for (uint32_t q = 0; q < n; ++q)
    for (const auto& e : a.edges[q])
      for (uint64_t l = 0; l < letters; ++l)
        if (e.guard.matches(l)) adj[q].insert(e.dst);

  std::vector<uint8_t> blue(n, 0), red(n, 0);
  // post-order blue DFS; red DFS from accepting states looks for a cycle
  std::function<bool(uint32_t, uint32_t)> red_dfs = [&](uint32_t v, uint32_t seed) -> bool {
    for (uint32_t w : adj[v]) {
      if (w == seed) return true;
      if (!red[w]) {
        red[w] = 1;
        if (red_dfs(w, seed)) return true;
      }
    }
    return false;
  };
  std::function<bool(uint32_t)> blue_dfs = [&](uint32_t v) -> bool {
    blue[v] = 1;
    for (uint32_t w : adj[v])
      if (!blue[w] && blue_dfs(w)) return true;
    if (a.accepting[v]) {
      if (red_dfs(v, v)) return true;
    }
    return false;
  };
  for (uint32_t q : a.initial)
    if (!blue[q] && blue_dfs(q)) return true;
  return false;
}

// Small total transition systems for checker/oracle differentials.
inline TransitionSystem random_system(int max_states, int ap_count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nd(1, max_states);
  size_t n = static_cast<size_t>(nd(rng));
  std::uniform_real_distribution<double> pd(0.2, 0.7);
  return bench::gen_system(n, pd(rng), ap_count, rng());
}

}  // namespace testsup
