#include "hymc/nba.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace hymc {

void Guard::normalize() {
  cubes.erase(std::remove_if(cubes.begin(), cubes.end(),
                             [](const Cube& c) { return c.contradictory(); }),
              cubes.end());
  std::sort(cubes.begin(), cubes.end());
  cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
  // absorption: drop cubes implied by a weaker cube
  std::vector<Cube> kept;
  for (size_t i = 0; i < cubes.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < cubes.size() && !dominated; ++j)
      if (i != j && cubes[j].subsumes(cubes[i])) dominated = true;
    if (!dominated) kept.push_back(cubes[i]);
  }
  cubes = std::move(kept);
}

Guard guard_and(const Guard& a, const Guard& b) {
  Guard out;
  for (const auto& ca : a.cubes)
    for (const auto& cb : b.cubes) {
      Cube c{ca.pos | cb.pos, ca.neg | cb.neg};
      if (!c.contradictory()) out.cubes.push_back(c);
    }
  out.normalize();
  return out;
}

Guard guard_or(Guard a, const Guard& b) {
  a.cubes.insert(a.cubes.end(), b.cubes.begin(), b.cubes.end());
  a.normalize();
  return a;
}

Guard guard_restrict(const Guard& g, int trace, int ap_count, uint64_t ap_mask) {
  uint64_t band = ap_count >= 64 ? ~0ull : ((1ull << ap_count) - 1);
  uint64_t present = (ap_mask & band) << (trace * ap_count);
  uint64_t zone = band << (trace * ap_count);
  Guard out;
  for (const auto& c : g.cubes) {
    if ((c.pos & zone & ~present) != 0) continue;  // requires an absent prop
    if ((c.neg & zone & present) != 0) continue;   // forbids a present prop
    out.cubes.push_back(Cube{c.pos & ~zone, c.neg & ~zone});
  }
  out.normalize();
  return out;
}

LassoWord zip_words(const std::vector<LassoWord>& parts) {
  if (parts.empty()) throw std::logic_error("zip_words: no components");
  LassoWord out;
  out.arity = static_cast<int>(parts.size());
  out.ap_count = parts[0].ap_count;
  out.stem.assign(parts[0].stem.size(), 0);
  out.loop.assign(parts[0].loop.size(), 0);
  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.arity != 1 || p.ap_count != out.ap_count || p.stem.size() != out.stem.size() ||
        p.loop.size() != out.loop.size())
      throw std::logic_error("zip_words: components not normalized");
    for (size_t k = 0; k < p.stem.size(); ++k) out.stem[k] |= p.stem[k] << (i * out.ap_count);
    for (size_t k = 0; k < p.loop.size(); ++k) out.loop[k] |= p.loop[k] << (i * out.ap_count);
  }
  return out;
}

std::string to_string(const LassoWord& w, const std::vector<std::string>& aps) {
  auto letter_str = [&](uint64_t m) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < w.arity; ++i)
      for (size_t j = 0; j < aps.size(); ++j)
        if (m >> flat_prop(i, static_cast<int>(j), static_cast<int>(aps.size())) & 1) {
          if (!first) s += ',';
          s += aps[j] + "@" + std::to_string(i);
          first = false;
        }
    return s + "}";
  };
  std::string out = "STEM:";
  for (uint64_t m : w.stem) out += " " + letter_str(m);
  out += " LOOP:";
  for (uint64_t m : w.loop) out += " " + letter_str(m);
  return out;
}

void Nba::add_edge(uint32_t src, Guard g, uint32_t dst) {
  g.normalize();
  if (g.is_false()) return;
  for (auto& e : edges[src])
    if (e.dst == dst) {
      e.guard = guard_or(std::move(e.guard), g);
      return;
    }
  edges[src].push_back(Edge{std::move(g), dst});
}

Nba Nba::universal(int arity, std::vector<std::string> aps) {
  Nba a;
  a.arity = arity;
  a.aps = std::move(aps);
  uint32_t q = a.add_state(true);
  a.initial.push_back(q);
  a.add_edge(q, Guard::truth(), q);
  return a;
}

Nba Nba::empty(int arity, std::vector<std::string> aps) {
  Nba a;
  a.arity = arity;
  a.aps = std::move(aps);
  return a;
}

void validate(const Nba& a) {
  if (a.arity < 0) throw ValidationError("negative arity");
  if (a.flat_props() > kMaxFlatProps)
    throw ValidationError("arity * |AP| exceeds " + std::to_string(kMaxFlatProps));
  uint64_t legal =
      a.flat_props() >= 64 ? ~0ull : ((1ull << a.flat_props()) - 1);
  if (a.accepting.size() != a.edges.size()) throw ValidationError("table size mismatch");
  for (uint32_t q : a.initial)
    if (q >= a.num_states()) throw ValidationError("initial state out of range");
  for (const auto& row : a.edges)
    for (const auto& e : row) {
      if (e.dst >= a.num_states()) throw ValidationError("edge target out of range");
      if (e.guard.is_false()) throw ValidationError("stored false guard");
      for (const auto& c : e.guard.cubes) {
        if (c.contradictory()) throw ValidationError("contradictory cube survived");
        if ((c.mentioned() & ~legal) != 0)
          throw ValidationError("guard references a trace index >= arity");
      }
    }
}

std::vector<int> scc_decompose(size_t n, const std::vector<std::vector<uint32_t>>& adj,
                               int& num_sccs) {
  // Iterative Tarjan.
  std::vector<int> comp(n, -1), low(n, 0), idx(n, -1);
  std::vector<uint32_t> stack;
  std::vector<uint8_t> on_stack(n, 0);
  int counter = 0;
  num_sccs = 0;

  struct Frame {
    uint32_t v;
    size_t child;
  };
  for (uint32_t root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        uint32_t w = adj[f.v][f.child++];
        if (idx[w] == -1) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        uint32_t v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == idx[v]) {
          while (true) {
            uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = num_sccs;
            if (w == v) break;
          }
          ++num_sccs;
        }
      }
    }
  }
  return comp;
}

namespace {

// Plain adjacency of an Nba restricted to the reachable part; `origin` maps
// back to original state ids.
struct Reachable {
  std::vector<std::vector<uint32_t>> adj;
  std::vector<uint32_t> origin;
  std::vector<int> dense;  // original -> dense or -1
};

Reachable reachable_part(const Nba& a) {
  Reachable r;
  r.dense.assign(a.num_states(), -1);
  std::deque<uint32_t> work;
  for (uint32_t q : a.initial)
    if (r.dense[q] == -1) {
      r.dense[q] = static_cast<int>(r.origin.size());
      r.origin.push_back(q);
      work.push_back(q);
    }
  while (!work.empty()) {
    uint32_t q = work.front();
    work.pop_front();
    for (const auto& e : a.edges[q])
      if (r.dense[e.dst] == -1) {
        r.dense[e.dst] = static_cast<int>(r.origin.size());
        r.origin.push_back(e.dst);
        work.push_back(e.dst);
      }
  }
  r.adj.resize(r.origin.size());
  for (size_t i = 0; i < r.origin.size(); ++i)
    for (const auto& e : a.edges[r.origin[i]])
      r.adj[i].push_back(static_cast<uint32_t>(r.dense[e.dst]));
  return r;
}

// BFS path of original-state ids from any of `from` to `to`; includes both
// endpoints. `allowed` (optional) restricts intermediate states.
std::vector<uint32_t> bfs_path(const Nba& a, const std::vector<uint32_t>& from, uint32_t to,
                               const std::vector<uint8_t>* allowed) {
  std::vector<int> pred(a.num_states(), -2);
  std::deque<uint32_t> work;
  for (uint32_t s : from) {
    if (allowed && !(*allowed)[s]) continue;
    if (pred[s] == -2) {
      pred[s] = -1;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    uint32_t q = work.front();
    work.pop_front();
    if (q == to) break;
    for (const auto& e : a.edges[q]) {
      if (allowed && !(*allowed)[e.dst]) continue;
      if (pred[e.dst] == -2) {
        pred[e.dst] = static_cast<int>(q);
        work.push_back(e.dst);
      }
    }
  }
  std::vector<uint32_t> path;
  if (pred[to] == -2) return path;
  for (int v = static_cast<int>(to); v != -1; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// First-cube model of the guard on some edge s -> d.
uint64_t edge_letter(const Nba& a, uint32_t s, uint32_t d) {
  for (const auto& e : a.edges[s])
    if (e.dst == d) return e.guard.first_model();
  throw std::logic_error("edge_letter: no such edge");
}

}  // namespace

EmptinessResult emptiness(const Nba& a) {
  Reachable r = reachable_part(a);
  if (r.origin.empty()) return {true, std::nullopt};
  int num;
  std::vector<int> comp = scc_decompose(r.origin.size(), r.adj, num);

  // SCC is a cycle candidate when it has >= 2 states or a self-loop.
  std::vector<int> size(num, 0);
  for (int c : comp) size[c]++;
  std::vector<uint8_t> has_self(num, 0);
  for (size_t v = 0; v < r.adj.size(); ++v)
    for (uint32_t w : r.adj[v])
      if (w == v) has_self[comp[v]] = 1;

  int target = -1;
  for (size_t v = 0; v < r.origin.size() && target < 0; ++v)
    if (a.accepting[r.origin[v]] && (size[comp[v]] >= 2 || has_self[comp[v]]))
      target = static_cast<int>(v);
  if (target < 0) return {true, std::nullopt};

  uint32_t acc = r.origin[target];
  // stem: initial -> acc
  std::vector<uint32_t> stem_path = bfs_path(a, a.initial, acc, nullptr);
  // loop: one step out of acc inside the SCC, then back to acc
  std::vector<uint8_t> in_scc(a.num_states(), 0);
  for (size_t v = 0; v < r.origin.size(); ++v)
    if (comp[v] == comp[target]) in_scc[r.origin[v]] = 1;
  std::vector<uint32_t> loop_path;
  for (const auto& e : a.edges[acc]) {
    if (!in_scc[e.dst]) continue;
    if (e.dst == acc) {
      loop_path = {acc, acc};
      break;
    }
    auto back = bfs_path(a, {e.dst}, acc, &in_scc);
    if (!back.empty()) {
      loop_path.push_back(acc);
      loop_path.insert(loop_path.end(), back.begin(), back.end());
      break;
    }
  }
  if (loop_path.empty()) throw std::logic_error("emptiness: SCC without cycle");

  LassoWord w;
  w.arity = a.arity;
  w.ap_count = static_cast<int>(a.aps.size());
  for (size_t i = 0; i + 1 < stem_path.size(); ++i)
    w.stem.push_back(edge_letter(a, stem_path[i], stem_path[i + 1]));
  for (size_t i = 0; i + 1 < loop_path.size(); ++i)
    w.loop.push_back(edge_letter(a, loop_path[i], loop_path[i + 1]));
  return {false, std::move(w)};
}

bool member(const Nba& a, const LassoWord& w) {
  if (a.arity != w.arity || static_cast<int>(a.aps.size()) != w.ap_count)
    throw ValidationError("member: arity/alphabet mismatch");
  if (w.loop.empty()) throw ValidationError("member: empty loop");
  size_t positions = w.total_len();
  size_t n = a.num_states() * positions;
  if (n == 0) return false;
  auto id = [&](uint32_t q, size_t pos) { return q * positions + pos; };
  auto next_pos = [&](size_t pos) {
    return pos + 1 < positions ? pos + 1 : w.period_start();
  };

  // product adjacency
  std::vector<std::vector<uint32_t>> adj(n);
  for (uint32_t q = 0; q < a.num_states(); ++q)
    for (size_t pos = 0; pos < positions; ++pos) {
      uint64_t letter = w.letter(pos);
      for (const auto& e : a.edges[q])
        if (e.guard.matches(letter))
          adj[id(q, pos)].push_back(id(e.dst, next_pos(pos)));
    }

  // reachable from (initial, 0)
  std::vector<uint8_t> reach(n, 0);
  std::deque<uint32_t> work;
  for (uint32_t q : a.initial) {
    reach[id(q, 0)] = 1;
    work.push_back(id(q, 0));
  }
  while (!work.empty()) {
    uint32_t v = work.front();
    work.pop_front();
    for (uint32_t x : adj[v])
      if (!reach[x]) {
        reach[x] = 1;
        work.push_back(x);
      }
  }

  int num;
  std::vector<int> comp = scc_decompose(n, adj, num);
  std::vector<int> size(num, 0);
  std::vector<uint8_t> has_self(num, 0);
  for (size_t v = 0; v < n; ++v) {
    size[comp[v]]++;
    for (uint32_t x : adj[v])
      if (x == v) has_self[comp[v]] = 1;
  }
  for (uint32_t q = 0; q < a.num_states(); ++q) {
    if (!a.accepting[q]) continue;
    for (size_t pos = 0; pos < positions; ++pos) {
      uint32_t v = id(q, pos);
      if (reach[v] && (size[comp[v]] >= 2 || has_self[comp[v]])) return true;
    }
  }
  return false;
}

Nba trim(const Nba& a) {
  // forward reachability
  std::vector<uint8_t> reach(a.num_states(), 0);
  std::deque<uint32_t> work;
  for (uint32_t q : a.initial)
    if (!reach[q]) {
      reach[q] = 1;
      work.push_back(q);
    }
  while (!work.empty()) {
    uint32_t q = work.front();
    work.pop_front();
    for (const auto& e : a.edges[q])
      if (!reach[e.dst]) {
        reach[e.dst] = 1;
        work.push_back(e.dst);
      }
  }

  // live = accepting state on a cycle (within the reachable part)
  std::vector<std::vector<uint32_t>> adj(a.num_states());
  for (uint32_t q = 0; q < a.num_states(); ++q)
    if (reach[q])
      for (const auto& e : a.edges[q])
        if (reach[e.dst]) adj[q].push_back(e.dst);
  int num;
  std::vector<int> comp = scc_decompose(a.num_states(), adj, num);
  std::vector<int> size(num, 0);
  std::vector<uint8_t> has_self(num, 0);
  for (uint32_t v = 0; v < a.num_states(); ++v) {
    if (!reach[v]) continue;
    size[comp[v]]++;
    for (uint32_t x : adj[v])
      if (x == v) has_self[comp[v]] = 1;
  }
  std::vector<uint8_t> keep(a.num_states(), 0);
  std::deque<uint32_t> back;
  for (uint32_t q = 0; q < a.num_states(); ++q)
    if (reach[q] && a.accepting[q] && (size[comp[q]] >= 2 || has_self[comp[q]])) {
      keep[q] = 1;
      back.push_back(q);
    }
  // backward reachability to live states
  std::vector<std::vector<uint32_t>> radj(a.num_states());
  for (uint32_t q = 0; q < a.num_states(); ++q)
    if (reach[q])
      for (const auto& e : a.edges[q])
        if (reach[e.dst]) radj[e.dst].push_back(q);
  while (!back.empty()) {
    uint32_t q = back.front();
    back.pop_front();
    for (uint32_t p : radj[q])
      if (!keep[p]) {
        keep[p] = 1;
        back.push_back(p);
      }
  }

  Nba out;
  out.arity = a.arity;
  out.aps = a.aps;
  std::vector<int> remap(a.num_states(), -1);
  for (uint32_t q = 0; q < a.num_states(); ++q)
    if (keep[q]) remap[q] = static_cast<int>(out.add_state(a.accepting[q]));
  for (uint32_t q : a.initial)
    if (keep[q]) out.initial.push_back(static_cast<uint32_t>(remap[q]));
  for (uint32_t q = 0; q < a.num_states(); ++q) {
    if (!keep[q]) continue;
    for (const auto& e : a.edges[q])
      if (keep[e.dst])
        out.add_edge(static_cast<uint32_t>(remap[q]), e.guard,
                     static_cast<uint32_t>(remap[e.dst]));
  }
  return out;
}

}  // namespace hymc
