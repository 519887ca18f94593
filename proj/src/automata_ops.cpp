#include "hymc/automata_ops.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace hymc {

Nba exists_step(const Nba& a, const TransitionSystem& t, const Limits& limits) {
  if (a.arity < 1) throw ValidationError("exists_step: arity must be >= 1");
  if (a.aps != t.aps) throw ValidationError("exists_step: alphabet mismatch");
  const int n = a.arity - 1;
  const int apc = static_cast<int>(a.aps.size());

  Nba out;
  out.arity = n;
  out.aps = a.aps;

  using P = std::pair<uint32_t, uint32_t>;  // (system state, automaton state)
  std::map<P, uint32_t> ids;
  std::vector<P> order;
  auto intern = [&](P p) -> uint32_t {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    limits.check_states(order.size() + 1, "exists_step");
    uint32_t id = out.add_state(a.accepting[p.second]);
    ids.emplace(p, id);
    order.push_back(p);
    return id;
  };

  for (uint32_t s : t.initial)
    for (uint32_t q : a.initial) out.initial.push_back(intern({s, q}));
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());

  for (uint32_t i = 0; i < order.size(); ++i) {
    limits.deadline.check();
    auto [s, q] = order[i];
    for (const auto& e : a.edges[q]) {
      Guard g = guard_restrict(e.guard, n, apc, t.label[s]);
      if (g.is_false()) continue;
      for (uint32_t s2 : t.succ[s]) out.add_edge(i, g, intern({s2, e.dst}));
    }
  }
  return trim(out);
}

Nba intersect(const Nba& a, const Nba& b, const Limits& limits) {
  if (a.arity != b.arity || a.aps != b.aps)
    throw ValidationError("intersect: arity/alphabet mismatch");

  Nba out;
  out.arity = a.arity;
  out.aps = a.aps;

  using P = std::tuple<uint32_t, uint32_t, uint8_t>;  // (a state, b state, copy)
  std::map<P, uint32_t> ids;
  std::vector<P> order;
  auto intern = [&](P p) -> uint32_t {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    limits.check_states(order.size() + 1, "intersect");
    // accepting: copy 1 at an accepting a-state
    uint32_t id = out.add_state(std::get<2>(p) == 1 && a.accepting[std::get<0>(p)]);
    ids.emplace(p, id);
    order.push_back(p);
    return id;
  };

  for (uint32_t qa : a.initial)
    for (uint32_t qb : b.initial) out.initial.push_back(intern({qa, qb, 1}));

  for (uint32_t i = 0; i < order.size(); ++i) {
    limits.deadline.check();
    auto [qa, qb, copy] = order[i];
    uint8_t next_copy;
    if (copy == 1)
      next_copy = a.accepting[qa] ? 2 : 1;
    else
      next_copy = b.accepting[qb] ? 1 : 2;
    for (const auto& ea : a.edges[qa])
      for (const auto& eb : b.edges[qb]) {
        Guard g = guard_and(ea.guard, eb.guard);
        if (g.is_false()) continue;
        out.add_edge(i, std::move(g), intern({ea.dst, eb.dst, next_copy}));
      }
  }
  return trim(out);
}

Nba self_composition(const TransitionSystem& t, int n, const Limits& limits) {
  if (n < 1) throw ValidationError("self_composition: n must be >= 1");
  const int apc = static_cast<int>(t.aps.size());
  if (n * apc > kMaxFlatProps)
    throw ResourceLimitError("self_composition: arity * |AP| exceeds 64");

  Nba out;
  out.arity = n;
  out.aps = t.aps;

  std::map<std::vector<uint32_t>, uint32_t> ids;
  std::vector<std::vector<uint32_t>> order;
  auto intern = [&](std::vector<uint32_t> tup) -> uint32_t {
    auto it = ids.find(tup);
    if (it != ids.end()) return it->second;
    limits.check_states(order.size() + 1, "self_composition");
    uint32_t id = out.add_state(true);
    ids.emplace(tup, id);
    order.push_back(std::move(tup));
    return id;
  };

  // initial tuples: cartesian product of initial states
  {
    std::vector<std::vector<uint32_t>> tuples{{}};
    for (int i = 0; i < n; ++i) {
      std::vector<std::vector<uint32_t>> next;
      for (const auto& tup : tuples)
        for (uint32_t s : t.initial) {
          auto e = tup;
          e.push_back(s);
          next.push_back(std::move(e));
        }
      tuples = std::move(next);
    }
    for (auto& tup : tuples) out.initial.push_back(intern(std::move(tup)));
  }

  uint64_t band = apc >= 64 ? ~0ull : ((1ull << apc) - 1);
  for (uint32_t i = 0; i < order.size(); ++i) {
    limits.deadline.check();
    std::vector<uint32_t> tup = order[i];
    // the edge letter specifies each component's label exactly
    Cube c;
    for (int k = 0; k < n; ++k) {
      uint64_t lab = t.label[tup[k]] & band;
      c.pos |= lab << (k * apc);
      c.neg |= (~lab & band) << (k * apc);
    }
    // successors: componentwise product, enumerated recursively
    std::vector<uint32_t> cur(n, 0);
    std::vector<size_t> pick(n, 0);
    while (true) {
      for (int k = 0; k < n; ++k) cur[k] = t.succ[tup[k]][pick[k]];
      out.add_edge(i, Guard::of(c), intern(cur));
      int k = n - 1;
      while (k >= 0 && ++pick[k] == t.succ[tup[k]].size()) pick[k--] = 0;
      if (k < 0) break;
    }
  }
  return out;  // every state lies on a cycle of a total system; trim is a no-op
}

// ---------------------------------------------------------------------------
// Rank-based complementation
// ---------------------------------------------------------------------------

namespace {

using StateSet = std::vector<uint32_t>;  // sorted

// Macro state of the complement: a waiting subset, or a tight level ranking
// with a cut-point set of even-ranked states.
struct Macro {
  bool tight = false;
  StateSet set;              // waiting: subset; tight: domain of f
  std::vector<int> rank;     // tight only, aligned with set
  StateSet cut;              // tight only, subset of even-ranked states

  bool operator<(const Macro& o) const {
    if (tight != o.tight) return tight < o.tight;
    if (set != o.set) return set < o.set;
    if (rank != o.rank) return rank < o.rank;
    return cut < o.cut;
  }
};

// All tight level rankings over `states` with per-state caps: f(s) <= cap[s],
// accepting states even, every odd rank up to the (odd) maximum present.
void enum_tight(const StateSet& states, const std::vector<int>& cap,
                const std::vector<uint8_t>& is_acc, std::vector<std::vector<int>>& out) {
  if (states.empty()) {
    out.push_back({});
    return;
  }
  int max_cap = 0;
  for (uint32_t s : states) max_cap = std::max(max_cap, cap[s]);
  std::vector<int> f(states.size(), 0);
  // choose the maximal odd rank r, then enumerate rankings with image
  // covering all odd ranks <= r
  for (int r = 1; r <= max_cap; r += 2) {
    std::vector<int> need((r + 1) / 2, 0);  // odd ranks 1,3,..,r -> coverage count
    auto rec = [&](auto&& self, size_t i) -> void {
      if (i == states.size()) {
        for (int c : need)
          if (c == 0) return;
        out.push_back(f);
        return;
      }
      uint32_t s = states[i];
      int c = std::min(cap[s], r);
      for (int v = 0; v <= c; ++v) {
        if (is_acc[s] && (v & 1)) continue;
        f[i] = v;
        if (v & 1) need[v / 2]++;
        self(self, i + 1);
        if (v & 1) need[v / 2]--;
      }
    };
    rec(rec, 0);
  }
}

}  // namespace

Nba complement(const Nba& a, const Limits& limits) {
  const int apc = static_cast<int>(a.aps.size());
  // Complement of the empty language is universal.
  if (a.num_states() == 0 || a.initial.empty()) return Nba::universal(a.arity, a.aps);

  size_t num_acc = 0;
  for (uint8_t f : a.accepting) num_acc += f;
  const int max_rank = 2 * static_cast<int>(a.num_states() - num_acc);

  Nba out;
  out.arity = a.arity;
  out.aps = a.aps;

  std::map<Macro, uint32_t> ids;
  std::vector<Macro> order;
  auto intern = [&](Macro m) -> uint32_t {
    auto it = ids.find(m);
    if (it != ids.end()) return it->second;
    limits.check_states(order.size() + 1, "complement");
    uint32_t id = out.add_state(m.tight && m.cut.empty());
    ids.emplace(m, id);
    order.push_back(std::move(m));
    return id;
  };

  std::vector<uint8_t> is_acc(a.accepting.begin(), a.accepting.end());

  Macro init;
  init.set.assign(a.initial.begin(), a.initial.end());
  std::sort(init.set.begin(), init.set.end());
  init.set.erase(std::unique(init.set.begin(), init.set.end()), init.set.end());
  out.initial.push_back(intern(init));

  for (uint32_t i = 0; i < order.size(); ++i) {
    limits.deadline.check();
    Macro m = order[i];

    // letter classes: assignments over the propositions mentioned by any
    // outgoing guard of the tracked states
    uint64_t mentioned = 0;
    for (uint32_t s : m.set)
      for (const auto& e : a.edges[s]) mentioned |= e.guard.mentioned();
    std::vector<int> bits;
    for (int b = 0; b < kMaxFlatProps; ++b)
      if (mentioned >> b & 1) bits.push_back(b);
    if (bits.size() > 24)
      throw ResourceLimitError("complement: too many propositions per macro state");

    for (uint64_t asg = 0; asg < (1ull << bits.size()); ++asg) {
      uint64_t letter = 0;
      Cube lc;
      for (size_t bi = 0; bi < bits.size(); ++bi) {
        if (asg >> bi & 1) {
          letter |= 1ull << bits[bi];
          lc.pos |= 1ull << bits[bi];
        } else {
          lc.neg |= 1ull << bits[bi];
        }
      }
      Guard letter_guard = Guard::of(lc);

      // successor set and per-successor rank caps
      std::map<uint32_t, int> succ_cap;  // tight: min over predecessors
      StateSet succ;
      for (size_t si = 0; si < m.set.size(); ++si) {
        uint32_t s = m.set[si];
        for (const auto& e : a.edges[s]) {
          if (!e.guard.matches(letter)) continue;
          auto it = succ_cap.find(e.dst);
          int bound = m.tight ? m.rank[si] : max_rank;
          if (it == succ_cap.end()) {
            succ_cap.emplace(e.dst, bound);
            succ.push_back(e.dst);
          } else {
            it->second = std::min(it->second, bound);
          }
        }
      }
      std::sort(succ.begin(), succ.end());

      std::vector<int> caps(a.num_states(), 0);
      for (auto& [s, c] : succ_cap) caps[s] = c;

      if (!m.tight) {
        // stay waiting
        Macro w;
        w.set = succ;
        out.add_edge(i, letter_guard, intern(w));
      }
      // tight successors (from waiting this is the jump)
      std::vector<std::vector<int>> rankings;
      enum_tight(succ, caps, is_acc, rankings);
      for (auto& f : rankings) {
        Macro t;
        t.tight = true;
        t.set = succ;
        t.rank = std::move(f);
        if (m.tight && !m.cut.empty()) {
          // follow the cut-point set, keeping even-ranked successors
          std::vector<uint8_t> from_cut(a.num_states(), 0);
          for (size_t si = 0; si < m.set.size(); ++si) {
            uint32_t s = m.set[si];
            if (!std::binary_search(m.cut.begin(), m.cut.end(), s)) continue;
            for (const auto& e : a.edges[s])
              if (e.guard.matches(letter)) from_cut[e.dst] = 1;
          }
          for (size_t si = 0; si < t.set.size(); ++si)
            if (from_cut[t.set[si]] && (t.rank[si] & 1) == 0) t.cut.push_back(t.set[si]);
        } else {
          // cut-point set exhausted (or fresh jump): restart with all evens
          for (size_t si = 0; si < t.set.size(); ++si)
            if ((t.rank[si] & 1) == 0) t.cut.push_back(t.set[si]);
        }
        out.add_edge(i, letter_guard, intern(std::move(t)));
      }
    }
  }

  return trim(out);
}

}  // namespace hymc
