#include "hymc/ltl2nba.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hymc {

namespace {

// Interned NNF formulas; ids are indices into the node arena. Using ids keeps
// obligation sets small and hashable.
struct Arena {
  struct Node {
    LtlOp op;
    int prop = -1;   // flat prop index for atoms
    int a = -1, b = -1;
  };
  std::vector<Node> nodes;
  std::map<std::tuple<LtlOp, int, int, int>, int> memo;
  std::vector<int> untils;  // ids of Until nodes, in intern order

  int intern(LtlOp op, int prop, int a, int b) {
    auto key = std::make_tuple(op, prop, a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    nodes.push_back({op, prop, a, b});
    memo.emplace(key, id);
    if (op == LtlOp::Until) untils.push_back(id);
    return id;
  }

  int from_body(const LtlRef& f, const std::vector<std::string>& var_order,
                const std::vector<std::string>& aps) {
    switch (f->op) {
      case LtlOp::True: return intern(LtlOp::True, -1, -1, -1);
      case LtlOp::False: return intern(LtlOp::False, -1, -1, -1);
      case LtlOp::Atom:
      case LtlOp::Not: {
        const LtlBody& at = f->op == LtlOp::Atom ? *f : *f->left;
        if (f->op == LtlOp::Not && at.op != LtlOp::Atom)
          throw ValidationError("ltl_to_nba: body not in negation normal form");
        auto vi = std::find(var_order.begin(), var_order.end(), at.trace);
        if (vi == var_order.end())
          throw ValidationError("ltl_to_nba: unbound trace variable " + at.trace);
        auto ai = std::find(aps.begin(), aps.end(), at.prop);
        if (ai == aps.end())
          throw ValidationError("ltl_to_nba: proposition not in alphabet: " + at.prop);
        int fp = flat_prop(static_cast<int>(vi - var_order.begin()),
                           static_cast<int>(ai - aps.begin()), static_cast<int>(aps.size()));
        return intern(f->op, fp, -1, -1);
      }
      case LtlOp::And:
      case LtlOp::Or:
      case LtlOp::Until:
      case LtlOp::Release: {
        int a = from_body(f->left, var_order, aps);
        int b = from_body(f->right, var_order, aps);
        return intern(f->op, -1, a, b);
      }
      case LtlOp::Next: {
        int a = from_body(f->left, var_order, aps);
        return intern(LtlOp::Next, -1, a, -1);
      }
      default:
        throw ValidationError("ltl_to_nba: body not in negation normal form");
    }
  }
};

using Obligations = std::vector<int>;  // sorted, unique

// One way to satisfy an obligation set now: a letter constraint, the
// obligations deferred to the next step, and the untils satisfied (not
// deferred) in this step.
struct Branch {
  Cube cube;
  std::set<int> next;
  std::set<int> fulfilled;  // until ids whose right side was taken now
};

void expand(const Arena& ar, std::vector<int> todo, Branch cur, std::vector<Branch>& out) {
  while (!todo.empty()) {
    int id = todo.back();
    todo.pop_back();
    const auto& n = ar.nodes[id];
    switch (n.op) {
      case LtlOp::True: break;
      case LtlOp::False: return;  // branch dies
      case LtlOp::Atom:
        if (cur.cube.neg >> n.prop & 1) return;
        cur.cube.pos |= 1ull << n.prop;
        break;
      case LtlOp::Not:
        if (cur.cube.pos >> n.prop & 1) return;
        cur.cube.neg |= 1ull << n.prop;
        break;
      case LtlOp::And:
        todo.push_back(n.a);
        todo.push_back(n.b);
        break;
      case LtlOp::Or: {
        auto left = todo;
        left.push_back(n.a);
        expand(ar, std::move(left), cur, out);
        todo.push_back(n.b);
        break;
      }
      case LtlOp::Next:
        cur.next.insert(n.a);
        break;
      case LtlOp::Until: {
        // now: right side, or left side + defer
        auto sat = todo;
        sat.push_back(n.b);
        Branch satb = cur;
        satb.fulfilled.insert(id);
        expand(ar, std::move(sat), std::move(satb), out);
        todo.push_back(n.a);
        cur.next.insert(id);
        break;
      }
      case LtlOp::Release: {
        // now: both sides (released), or right side + defer
        auto rel = todo;
        rel.push_back(n.a);
        rel.push_back(n.b);
        expand(ar, std::move(rel), cur, out);
        todo.push_back(n.b);
        cur.next.insert(id);
        break;
      }
      default:
        throw std::logic_error("expand: bad op");
    }
  }
  out.push_back(std::move(cur));
}

}  // namespace

Nba ltl_to_nba(const LtlRef& body, const std::vector<std::string>& var_order,
               const std::vector<std::string>& aps, const Limits& limits) {
  if (static_cast<int>(var_order.size() * aps.size()) > kMaxFlatProps)
    throw ResourceLimitError("ltl_to_nba: arity * |AP| exceeds 64");
  Arena ar;
  int root = ar.from_body(body, var_order, aps);
  const int k = static_cast<int>(ar.untils.size());
  std::map<int, int> until_pos;  // until id -> acceptance index
  for (int i = 0; i < k; ++i) until_pos[ar.untils[i]] = i;

  // Tableau state: (obligation set, degeneralization level). Level i waits
  // for acceptance mark i; level k is the accepting "round complete" state.
  using TState = std::pair<Obligations, int>;
  std::map<TState, uint32_t> ids;
  std::vector<TState> states;

  Nba out;
  out.arity = static_cast<int>(var_order.size());
  out.aps = aps;

  auto intern_state = [&](Obligations obs, int level) -> uint32_t {
    TState key{std::move(obs), level};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    limits.check_states(states.size() + 1, "ltl_to_nba");
    uint32_t q = out.add_state(k == 0 || level == k);
    ids.emplace(key, q);
    states.push_back(ids.find(key)->first);
    return q;
  };

  // Expansion branches depend only on the obligation set; compute once per set.
  std::map<Obligations, std::vector<Branch>> expansions;
  auto expansion_of = [&](const Obligations& obs) -> const std::vector<Branch>& {
    auto it = expansions.find(obs);
    if (it != expansions.end()) return it->second;
    std::vector<Branch> bs;
    expand(ar, std::vector<int>(obs.begin(), obs.end()), Branch{}, bs);
    return expansions.emplace(obs, std::move(bs)).first->second;
  };

  uint32_t q0 = intern_state({root}, 0);
  out.initial.push_back(q0);

  for (uint32_t q = 0; q < states.size(); ++q) {
    limits.deadline.check();
    auto [obs, level] = states[q];
    for (const Branch& br : expansion_of(obs)) {
      // An until in the source set yields a mark when its right disjunct was
      // taken; untils not in the source are trivially marked.
      int j = level == k ? 0 : level;
      if (k > 0) {
        std::set<int> in_src(obs.begin(), obs.end());
        while (j < k) {
          int uid = ar.untils[j];
          bool marked = !in_src.count(uid) || br.fulfilled.count(uid);
          if (!marked) break;
          ++j;
        }
      }
      Obligations next(br.next.begin(), br.next.end());
      uint32_t dst = intern_state(std::move(next), j);
      out.add_edge(q, Guard::of(br.cube), dst);
    }
  }

  return trim(out);
}

}  // namespace hymc
