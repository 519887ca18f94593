#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hymc/common.hpp"

namespace hymc {

// Symbolic product alphabet: a letter of Sigma^n assigns each of the n trace
// indices an AP set. Letters are packed into a single uint64_t with bit
// layout flat(i, j) = i * ap_count + j for trace index i and AP index j, so
// arity * ap_count <= 64.

constexpr int kMaxFlatProps = 64;

inline int flat_prop(int trace, int ap, int ap_count) { return trace * ap_count + ap; }

/// Conjunction of literals over indexed propositions, as positive/negative
/// bitmasks. pos & neg != 0 means the cube is contradictory.
struct Cube {
  uint64_t pos = 0, neg = 0;

  bool contradictory() const { return (pos & neg) != 0; }
  bool matches(uint64_t letter) const { return (letter & pos) == pos && (letter & neg) == 0; }
  uint64_t mentioned() const { return pos | neg; }
  bool subsumes(const Cube& other) const {
    return (pos & ~other.pos) == 0 && (neg & ~other.neg) == 0;
  }
  bool operator==(const Cube& o) const { return pos == o.pos && neg == o.neg; }
  bool operator<(const Cube& o) const { return pos != o.pos ? pos < o.pos : neg < o.neg; }
};

/// DNF guard; no cube is contradictory, the empty cube list is `false` and a
/// single empty cube is `true`.
struct Guard {
  std::vector<Cube> cubes;

  static Guard truth() { return Guard{{Cube{}}}; }
  static Guard falsity() { return Guard{}; }
  static Guard of(Cube c) { return c.contradictory() ? falsity() : Guard{{c}}; }

  bool is_false() const { return cubes.empty(); }
  bool is_true() const { return cubes.size() == 1 && cubes[0].pos == 0 && cubes[0].neg == 0; }
  bool matches(uint64_t letter) const {
    for (const auto& c : cubes)
      if (c.matches(letter)) return true;
    return false;
  }
  uint64_t mentioned() const {
    uint64_t m = 0;
    for (const auto& c : cubes) m |= c.mentioned();
    return m;
  }
  /// Minimal model of the first cube: unmentioned propositions absent.
  uint64_t first_model() const { return cubes.at(0).pos; }

  /// Drops contradictory, duplicate and subsumed cubes.
  void normalize();
};

Guard guard_and(const Guard& a, const Guard& b);
Guard guard_or(Guard a, const Guard& b);

/// Partially evaluates all literals with trace index `trace`: literals agreeing
/// with `ap_mask` are dropped, disagreeing cubes die; remaining literals keep
/// their flat positions (the caller re-packs if arity shrinks).
Guard guard_restrict(const Guard& g, int trace, int ap_count, uint64_t ap_mask);

/// Ultimately periodic word stem . loop^omega over Sigma^arity; letters are
/// packed masks as described above.
struct LassoWord {
  int arity = 1;
  int ap_count = 0;
  std::vector<uint64_t> stem;
  std::vector<uint64_t> loop;  // nonempty

  size_t period_start() const { return stem.size(); }
  size_t total_len() const { return stem.size() + loop.size(); }
  uint64_t letter(size_t pos) const {
    if (pos < stem.size()) return stem[pos];
    return loop[(pos - stem.size()) % loop.size()];
  }
};

/// Pointwise product of arity-1 words of equal stem/loop length.
LassoWord zip_words(const std::vector<LassoWord>& parts);

/// `{a@0,b@1} {} ...` rendering used by witness output.
std::string to_string(const LassoWord& w, const std::vector<std::string>& aps);

/// Nondeterministic Buchi automaton over Sigma^arity with DNF guards.
struct Nba {
  int arity = 1;
  std::vector<std::string> aps;  // per-trace AP names
  std::vector<uint32_t> initial;
  std::vector<uint8_t> accepting;
  struct Edge {
    Guard guard;
    uint32_t dst;
  };
  std::vector<std::vector<Edge>> edges;

  size_t num_states() const { return edges.size(); }
  int flat_props() const { return arity * static_cast<int>(aps.size()); }

  uint32_t add_state(bool acc) {
    accepting.push_back(acc ? 1 : 0);
    edges.emplace_back();
    return static_cast<uint32_t>(edges.size() - 1);
  }
  /// Adds an edge, merging into an existing src->dst guard. False guards are
  /// dropped; all stored guards stay normalized.
  void add_edge(uint32_t src, Guard g, uint32_t dst);

  /// The universal automaton over the given alphabet: one accepting state
  /// with a true self-loop.
  static Nba universal(int arity, std::vector<std::string> aps);
  /// The empty-language automaton (no states).
  static Nba empty(int arity, std::vector<std::string> aps);
};

/// Invariants: guard arity ranges, normalized guards, index ranges.
void validate(const Nba& a);

struct EmptinessResult {
  bool empty;
  std::optional<LassoWord> witness;  // present iff nonempty
};

/// SCC-based emptiness with lasso extraction. The witness word instantiates
/// each guard to the first cube's minimal model.
EmptinessResult emptiness(const Nba& a);

/// Does `a` accept the lasso word? Accepting-cycle search on the product of
/// `a` with the lasso structure.
bool member(const Nba& a, const LassoWord& w);

/// Automaton hygiene: keeps only states reachable from initial and
/// co-reachable to an accepting cycle. Language-preserving.
Nba trim(const Nba& a);

/// Tarjan SCC over an explicit adjacency list; returns component id per node
/// (component ids in reverse topological order).
std::vector<int> scc_decompose(size_t n, const std::vector<std::vector<uint32_t>>& adj,
                               int& num_sccs);

}  // namespace hymc
