#include "hymc/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace hymc::oracle {

// ---------------------------------------------------------------------------
// Lasso-word evaluation
// ---------------------------------------------------------------------------

const LassoWord& LassoAssignment::word_of(const std::string& var) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == var) return words[i];
  throw ValidationError("unbound trace variable: " + var);
}

LassoAssignment make_assignment(std::vector<std::string> aps,
                                std::vector<std::pair<std::string, LassoWord>> parts) {
  LassoAssignment asg;
  asg.aps = std::move(aps);
  size_t stem = 0, loop = 1;
  for (const auto& [v, w] : parts) {
    (void)v;
    if (w.arity != 1) throw ValidationError("assignment words must have arity 1");
    if (w.loop.empty()) throw ValidationError("assignment word with empty loop");
    stem = std::max(stem, w.stem.size());
    loop = std::lcm(loop, w.loop.size());
  }
  for (auto& [v, w] : parts) {
    LassoWord n;
    n.arity = 1;
    n.ap_count = static_cast<int>(asg.aps.size());
    for (size_t p = 0; p < stem; ++p) n.stem.push_back(w.letter(p));
    for (size_t p = stem; p < stem + loop; ++p) n.loop.push_back(w.letter(p));
    asg.vars.push_back(v);
    asg.words.push_back(std::move(n));
  }
  return asg;
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const LassoAssignment& asg) : asg_(asg) {
    stem_ = asg.stem_len();
    loop_ = asg.loop_len();
  }

  bool eval(const LtlRef& f, size_t pos) {
    pos = canon(pos);
    auto key = std::make_pair(f.get(), pos);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool v = compute(f, pos);
    memo_.emplace(key, v);
    return v;
  }

 private:
  size_t canon(size_t p) const { return p < stem_ + loop_ ? p : stem_ + (p - stem_) % loop_; }
  size_t horizon() const { return stem_ + 2 * loop_; }

  bool compute(const LtlRef& f, size_t pos) {
    switch (f->op) {
      case LtlOp::True: return true;
      case LtlOp::False: return false;
      case LtlOp::Atom: {
        const LassoWord& w = asg_.word_of(f->trace);
        auto it = std::find(asg_.aps.begin(), asg_.aps.end(), f->prop);
        if (it == asg_.aps.end()) return false;  // proposition never holds
        return w.letter(pos) >> (it - asg_.aps.begin()) & 1;
      }
      case LtlOp::Not: return !eval(f->left, pos);
      case LtlOp::And: return eval(f->left, pos) && eval(f->right, pos);
      case LtlOp::Or: return eval(f->left, pos) || eval(f->right, pos);
      case LtlOp::Next: return eval(f->left, pos + 1);
      case LtlOp::Until:
        for (size_t j = pos; j < horizon(); ++j) {
          if (eval(f->right, j)) return true;
          if (!eval(f->left, j)) return false;
        }
        return false;
      case LtlOp::Release:
        for (size_t j = pos; j < horizon(); ++j) {
          if (!eval(f->right, j)) return false;
          if (eval(f->left, j)) return true;
        }
        return true;
      case LtlOp::Eventually:
        for (size_t j = pos; j < horizon(); ++j)
          if (eval(f->left, j)) return true;
        return false;
      case LtlOp::Globally:
        for (size_t j = pos; j < horizon(); ++j)
          if (!eval(f->left, j)) return false;
        return true;
    }
    throw std::logic_error("eval: bad op");
  }

  const LassoAssignment& asg_;
  size_t stem_, loop_;
  std::map<std::pair<const LtlBody*, size_t>, bool> memo_;
};

}  // namespace

bool eval(const LtlRef& body, const LassoAssignment& asg, size_t pos) {
  return Evaluator(asg).eval(body, pos);
}

// ---------------------------------------------------------------------------
// Naive explicit-alphabet decision procedure
// ---------------------------------------------------------------------------

namespace {

// Explicit-alphabet NBA: delta indexed by state and packed letter.
struct XNba {
  int bits = 0;  // flat proposition count; 2^bits letters
  std::vector<uint32_t> init;
  std::vector<uint8_t> acc;
  std::vector<std::vector<std::vector<uint32_t>>> delta;

  size_t n() const { return acc.size(); }
  size_t letters() const { return 1ull << bits; }
  uint32_t add(bool a) {
    acc.push_back(a ? 1 : 0);
    delta.emplace_back(letters());
    return static_cast<uint32_t>(acc.size() - 1);
  }
};

// --- closure-based translation (Vardi-Wolper style) ---

// Core ops only: True, False, Atom, Not, And, Next, Until.
LtlRef to_core(const LtlRef& f) {
  using namespace ltl;
  switch (f->op) {
    case LtlOp::True:
    case LtlOp::False:
    case LtlOp::Atom: return f;
    case LtlOp::Not: return make_not(to_core(f->left));
    case LtlOp::And: return make_and(to_core(f->left), to_core(f->right));
    case LtlOp::Or:
      return make_not(make_and(make_not(to_core(f->left)), make_not(to_core(f->right))));
    case LtlOp::Next: return next(to_core(f->left));
    case LtlOp::Until: return until(to_core(f->left), to_core(f->right));
    case LtlOp::Release:
      return make_not(until(make_not(to_core(f->left)), make_not(to_core(f->right))));
    case LtlOp::Eventually: return until(tt(), to_core(f->left));
    case LtlOp::Globally: return make_not(until(tt(), make_not(to_core(f->left))));
  }
  throw std::logic_error("to_core: bad op");
}

struct Closure {
  struct Node {
    LtlOp op;
    int prop = -1;  // flat prop for atoms
    int a = -1, b = -1;
  };
  std::vector<Node> nodes;
  std::map<std::tuple<LtlOp, int, int, int>, int> memo;
  std::vector<int> free_slots;  // atoms, Next, Until (membership undetermined)
  std::vector<int> atoms, nexts, untils;
  int root = -1;

  int intern(LtlOp op, int prop, int a, int b) {
    auto key = std::make_tuple(op, prop, a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    nodes.push_back({op, prop, a, b});
    memo.emplace(key, id);
    if (op == LtlOp::Atom) {
      atoms.push_back(id);
      free_slots.push_back(id);
    } else if (op == LtlOp::Next) {
      nexts.push_back(id);
      free_slots.push_back(id);
    } else if (op == LtlOp::Until) {
      untils.push_back(id);
      free_slots.push_back(id);
    }
    return id;
  }

  int build(const LtlRef& f, const std::vector<std::string>& vars,
            const std::vector<std::string>& aps) {
    switch (f->op) {
      case LtlOp::True: return intern(LtlOp::True, -1, -1, -1);
      case LtlOp::False: return intern(LtlOp::False, -1, -1, -1);
      case LtlOp::Atom: {
        auto vi = std::find(vars.begin(), vars.end(), f->trace);
        auto ai = std::find(aps.begin(), aps.end(), f->prop);
        if (vi == vars.end()) throw ValidationError("unbound trace variable: " + f->trace);
        if (ai == aps.end())
          throw ValidationError("proposition not declared by the system: " + f->prop);
        int fp = static_cast<int>((vi - vars.begin()) * aps.size() + (ai - aps.begin()));
        return intern(LtlOp::Atom, fp, -1, -1);
      }
      case LtlOp::Not: return intern(LtlOp::Not, -1, build(f->left, vars, aps), -1);
      case LtlOp::And: {
        int a = build(f->left, vars, aps);
        int b = build(f->right, vars, aps);
        return intern(LtlOp::And, -1, a, b);
      }
      case LtlOp::Next: return intern(LtlOp::Next, -1, build(f->left, vars, aps), -1);
      case LtlOp::Until: {
        int a = build(f->left, vars, aps);
        int b = build(f->right, vars, aps);
        return intern(LtlOp::Until, -1, a, b);
      }
      default: throw std::logic_error("closure: non-core op");
    }
  }
};

// A state is the set of closure formulas holding now, encoded as a bitmask
// over node ids; membership of determined nodes follows from the free slots.
uint64_t close_assignment(const Closure& cl, uint64_t free_bits) {
  uint64_t q = 0;
  for (size_t id = 0; id < cl.nodes.size(); ++id) {
    const auto& n = cl.nodes[id];
    bool v = false;
    switch (n.op) {
      case LtlOp::True: v = true; break;
      case LtlOp::False: v = false; break;
      case LtlOp::Not: v = !(q >> n.a & 1); break;
      case LtlOp::And: v = (q >> n.a & 1) && (q >> n.b & 1); break;
      default: {
        auto it = std::find(cl.free_slots.begin(), cl.free_slots.end(), static_cast<int>(id));
        v = free_bits >> (it - cl.free_slots.begin()) & 1;
        break;
      }
    }
    if (v) q |= 1ull << id;
  }
  return q;
}

XNba xnba_from_body(const LtlRef& body, const std::vector<std::string>& vars,
                    const std::vector<std::string>& aps) {
  Closure cl;
  cl.root = cl.build(to_core(body), vars, aps);
  const int bits = static_cast<int>(vars.size() * aps.size());
  if (cl.free_slots.size() > 20) throw OracleBoundsError("oracle: closure too large");

  // all consistent formula sets
  std::vector<uint64_t> sets;
  for (uint64_t fb = 0; fb < (1ull << cl.free_slots.size()); ++fb)
    sets.push_back(close_assignment(cl, fb));
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  // successor constraint: q -> q' for letter sigma
  auto ok_letter = [&](uint64_t q, uint64_t sigma) {
    for (int a : cl.atoms) {
      bool in_q = q >> a & 1;
      bool in_sigma = sigma >> cl.nodes[a].prop & 1;
      if (in_q != in_sigma) return false;
    }
    return true;
  };
  auto ok_step = [&](uint64_t q, uint64_t q2) {
    for (int x : cl.nexts)
      if (((q >> x) & 1) != ((q2 >> cl.nodes[x].a) & 1)) return false;
    for (int u : cl.untils) {
      bool uq = q >> u & 1;
      bool yq = q >> cl.nodes[u].b & 1;
      bool xq = q >> cl.nodes[u].a & 1;
      bool uq2 = q2 >> u & 1;
      if (uq != (yq || (xq && uq2))) return false;
    }
    return true;
  };

  // generalized acceptance per until: u not promised or fulfilled
  const int k = static_cast<int>(cl.untils.size());
  auto gba_ok = [&](uint64_t q, int ui) {
    int u = cl.untils[ui];
    return !(q >> u & 1) || (q >> cl.nodes[u].b & 1);
  };

  // degeneralize: (set, level); level k accepting, wraps to 0
  XNba out;
  out.bits = bits;
  std::map<std::pair<uint64_t, int>, uint32_t> ids;
  std::vector<std::pair<uint64_t, int>> order;
  auto intern = [&](uint64_t q, int level) {
    auto key = std::make_pair(q, level);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    uint32_t s = out.add(k == 0 || level == k);
    ids.emplace(key, s);
    order.push_back(key);
    return s;
  };

  for (uint64_t q : sets)
    if (q >> cl.root & 1) out.init.push_back(intern(q, 0));

  for (uint32_t i = 0; i < order.size(); ++i) {
    auto [q, level] = order[i];
    // successor sets are letter-independent; letters only gate via the atoms
    int j = level == k ? 0 : level;
    while (j < k && gba_ok(q, j)) ++j;
    std::vector<uint32_t> dsts;
    for (uint64_t q2 : sets)
      if (ok_step(q, q2)) dsts.push_back(intern(q2, j));
    for (uint64_t sigma = 0; sigma < out.letters(); ++sigma)
      if (ok_letter(q, sigma)) out.delta[i][sigma] = dsts;
  }
  return out;
}

// --- explicit product with the system, eliminating the last trace index ---

XNba xnba_exists(const XNba& a, const TransitionSystem& t, int inner_bits) {
  // inner_bits: flat props of the result (= a.bits - |AP|)
  XNba out;
  out.bits = inner_bits;
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> ids;
  std::vector<std::pair<uint32_t, uint32_t>> order;
  auto intern = [&](uint32_t s, uint32_t q) {
    auto key = std::make_pair(s, q);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    uint32_t id = out.add(a.acc[q]);
    ids.emplace(key, id);
    order.push_back(key);
    return id;
  };
  for (uint32_t s : t.initial)
    for (uint32_t q : a.init) out.init.push_back(intern(s, q));
  for (uint32_t i = 0; i < order.size(); ++i) {
    auto [s, q] = order[i];
    uint64_t high = t.label[s] << inner_bits;
    for (uint64_t sigma = 0; sigma < out.letters(); ++sigma)
      for (uint32_t q2 : a.delta[q][sigma | high])
        for (uint32_t s2 : t.succ[s]) out.delta[i][sigma].push_back(intern(s2, q2));
  }
  return out;
}

// --- rank-tuple complementation over explicit letters ---

XNba xnba_complement(const XNba& a) {
  if (a.init.empty()) {  // empty language: universal automaton
    XNba out;
    out.bits = a.bits;
    uint32_t q = out.add(true);
    out.init.push_back(q);
    for (uint64_t sigma = 0; sigma < out.letters(); ++sigma) out.delta[q][sigma].push_back(q);
    return out;
  }
  size_t nacc = 0;
  for (uint8_t f : a.acc) nacc += f;
  const int cap = 2 * static_cast<int>(a.n() - nacc);

  // macro: waiting set, or map state->rank plus cut set
  struct M {
    bool tight = false;
    std::set<uint32_t> set;
    std::map<uint32_t, int> rank;
    std::set<uint32_t> cut;
    bool operator<(const M& o) const {
      return std::tie(tight, set, rank, cut) < std::tie(o.tight, o.set, o.rank, o.cut);
    }
  };

  XNba out;
  out.bits = a.bits;
  std::map<M, uint32_t> ids;
  std::vector<M> order;
  auto intern = [&](M m) {
    auto it = ids.find(m);
    if (it != ids.end()) return it->second;
    if (order.size() >= 2000000) throw OracleBoundsError("oracle: complement too large");
    uint32_t id = out.add(m.tight && m.cut.empty());
    ids.emplace(m, id);
    order.push_back(std::move(m));
    return id;
  };

  M init;
  init.set.insert(a.init.begin(), a.init.end());
  out.init.push_back(intern(init));

  // all tight rankings of `states` bounded pointwise by `bound`
  auto tight_rankings = [&](const std::vector<uint32_t>& states,
                            const std::vector<int>& bound) {
    std::vector<std::map<uint32_t, int>> result;
    if (states.empty()) {
      result.emplace_back();
      return result;
    }
    int maxb = *std::max_element(bound.begin(), bound.end());
    std::vector<int> cur(states.size());
    for (int r = 1; r <= maxb; r += 2) {
      std::vector<int> covered((r + 1) / 2, 0);
      auto rec = [&](auto&& self, size_t i, int missing) -> void {
        if (missing > static_cast<int>(states.size() - i)) return;  // cannot cover
        if (i == states.size()) {
          if (missing == 0) {
            std::map<uint32_t, int> f;
            for (size_t j = 0; j < states.size(); ++j) f[states[j]] = cur[j];
            result.push_back(std::move(f));
          }
          return;
        }
        int hi = std::min(bound[i], r);
        for (int v = 0; v <= hi; ++v) {
          if (a.acc[states[i]] && (v & 1)) continue;
          cur[i] = v;
          int m2 = missing;
          if ((v & 1) && covered[v / 2]++ == 0) --m2;
          self(self, i + 1, m2);
          if (v & 1) --covered[v / 2];
        }
      };
      rec(rec, 0, (r + 1) / 2);
    }
    return result;
  };

  for (uint32_t i = 0; i < order.size(); ++i) {
    M m = order[i];
    for (uint64_t sigma = 0; sigma < out.letters(); ++sigma) {
      std::map<uint32_t, int> bound_of;
      for (uint32_t s : m.set) {
        int b = m.tight ? m.rank.at(s) : cap;
        for (uint32_t d : a.delta[s][sigma]) {
          auto it = bound_of.find(d);
          if (it == bound_of.end())
            bound_of.emplace(d, b);
          else
            it->second = std::min(it->second, b);
        }
      }
      std::vector<uint32_t> succ;
      std::vector<int> bound;
      for (const auto& [d, b] : bound_of) {
        succ.push_back(d);
        bound.push_back(b);
      }

      if (!m.tight) {
        M w;
        w.set.insert(succ.begin(), succ.end());
        out.delta[i][sigma].push_back(intern(std::move(w)));
      }
      for (auto& f : tight_rankings(succ, bound)) {
        M t;
        t.tight = true;
        t.set.insert(succ.begin(), succ.end());
        if (m.tight && !m.cut.empty()) {
          for (uint32_t s : m.cut)
            for (uint32_t d : a.delta[s][sigma])
              if ((f.at(d) & 1) == 0) t.cut.insert(d);
        } else {
          for (const auto& [d, r] : f)
            if ((r & 1) == 0) t.cut.insert(d);
        }
        t.rank = std::move(f);
        out.delta[i][sigma].push_back(intern(std::move(t)));
      }
    }
  }
  return out;
}

// --- nested-DFS emptiness (explicit) ---

bool xnba_nonempty(const XNba& a) {
  const size_t n = a.n();
  std::vector<uint8_t> blue(n, 0), red(n, 0);

  // iterative nested DFS; returns true when an accepting cycle is found
  auto red_dfs = [&](uint32_t seed) {
    std::vector<uint32_t> stack{seed};
    std::vector<uint8_t> local(n, 0);
    while (!stack.empty()) {
      uint32_t v = stack.back();
      stack.pop_back();
      for (uint64_t sigma = 0; sigma < a.letters(); ++sigma)
        for (uint32_t w : a.delta[v][sigma]) {
          if (w == seed) return true;
          if (!local[w] && !red[w]) {
            local[w] = 1;
            stack.push_back(w);
          }
        }
    }
    for (size_t v = 0; v < n; ++v)
      if (local[v]) red[v] = 1;
    return false;
  };

  struct Frame {
    uint32_t v;
    uint64_t sigma = 0;
    size_t child = 0;
  };
  for (uint32_t q0 : a.init) {
    if (blue[q0]) continue;
    std::vector<Frame> frames{{q0}};
    blue[q0] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      bool descended = false;
      while (f.sigma < a.letters()) {
        const auto& ds = a.delta[f.v][f.sigma];
        if (f.child >= ds.size()) {
          ++f.sigma;
          f.child = 0;
          continue;
        }
        uint32_t w = ds[f.child++];
        if (!blue[w]) {
          blue[w] = 1;
          frames.push_back({w});
          descended = true;
          break;
        }
      }
      if (descended) continue;
      uint32_t v = f.v;
      frames.pop_back();
      if (a.acc[v] && !red[v]) {
        if (red_dfs(v)) return true;
        red[v] = 1;
      }
    }
  }
  return false;
}

}  // namespace

bool decide_naive(const TransitionSystem& t, const HyperFormula& f,
                  const OracleBounds& bounds) {
  validate(f);
  if (t.num_states() > bounds.max_states)
    throw OracleBoundsError("oracle: system exceeds " + std::to_string(bounds.max_states) +
                            " states");
  if (f.prefix.size() > bounds.max_quantifiers)
    throw OracleBoundsError("oracle: more than " + std::to_string(bounds.max_quantifiers) +
                            " quantifiers");
  if (body_size(f.body) > bounds.max_body_size)
    throw OracleBoundsError("oracle: body exceeds size " +
                            std::to_string(bounds.max_body_size));
  const int apc = static_cast<int>(t.aps.size());
  if (static_cast<int>(f.prefix.size()) * apc > bounds.max_letter_bits)
    throw OracleBoundsError("oracle: explicit alphabet exceeds 2^" +
                            std::to_string(bounds.max_letter_bits));

  std::vector<std::string> vars;
  for (const auto& [q, v] : f.prefix) {
    (void)q;
    vars.push_back(v);
  }

  // Innermost quantifier decides the initial polarity; each polarity flip is
  // one complementation.
  bool negated = !f.prefix.empty() && f.prefix.back().first == Quantifier::Forall;
  LtlRef body0 = negated ? ltl::make_not(f.body) : f.body;
  XNba a = xnba_from_body(body0, vars, t.aps);

  for (size_t i = f.prefix.size(); i-- > 0;) {
    Quantifier q = f.prefix[i].first;
    if (q == Quantifier::Exists && negated) {
      a = xnba_complement(a);
      negated = false;
    } else if (q == Quantifier::Forall && !negated) {
      a = xnba_complement(a);
      negated = true;
    }
    a = xnba_exists(a, t, static_cast<int>(i) * apc);
  }

  bool nonempty = xnba_nonempty(a);
  return negated ? !nonempty : nonempty;
}

}  // namespace hymc::oracle
