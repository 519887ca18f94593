#include "hymc/inclusion.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "hymc/automata_ops.hpp"
#include "hymc/io_automata.hpp"

namespace hymc {

InclusionOutcome include_complement(const Nba& a, const Nba& b, const Limits& limits) {
  if (a.arity != b.arity || a.aps != b.aps)
    throw ValidationError("inclusion: arity/alphabet mismatch");
  Stopwatch sw;
  Nba cb = complement(b, limits);
  Nba prod = intersect(a, cb, limits);
  EmptinessResult e = emptiness(prod);
  InclusionOutcome out;
  out.included = e.empty;
  if (!e.empty) out.counterexample = e.witness;
  out.stats = {"complement", cb.num_states() + prod.num_states(), sw.elapsed_ms()};
  return out;
}

// ---------------------------------------------------------------------------
// Antichain engine
// ---------------------------------------------------------------------------

namespace {

// Macro state of comp(b), tracked on the fly. Waiting: plain subset. Tight:
// level ranking (tightness restriction) with an even-rank cut-point set.
struct BMacro {
  bool tight = false;
  std::vector<uint32_t> set;  // sorted
  std::vector<int> rank;      // tight, aligned with set
  std::vector<uint32_t> cut;  // tight, sorted subset of even-ranked

  bool flush() const { return tight && cut.empty(); }
  bool operator<(const BMacro& o) const {
    return std::tie(tight, set, rank, cut) < std::tie(o.tight, o.set, o.rank, o.cut);
  }
};

struct ProductNode {
  uint32_t q;  // a-state
  BMacro m;
  bool operator<(const ProductNode& o) const { return std::tie(q, m) < std::tie(o.q, o.m); }
};

// All tight level rankings over `states` with pointwise bounds; accepting
// states of b get even ranks, every odd rank up to the maximum occurs.
void tight_rankings(const std::vector<uint32_t>& states, const std::vector<int>& bound,
                    const std::vector<uint8_t>& bacc, std::vector<std::vector<int>>& out) {
  if (states.empty()) {
    out.push_back({});
    return;
  }
  int maxb = *std::max_element(bound.begin(), bound.end());
  std::vector<int> f(states.size());
  for (int r = 1; r <= maxb; r += 2) {
    std::vector<int> cover((r + 1) / 2, 0);
    auto rec = [&](auto&& self, size_t i, int missing) -> void {
      if (missing > static_cast<int>(states.size() - i)) return;
      if (i == states.size()) {
        if (missing == 0) out.push_back(f);
        return;
      }
      int hi = std::min(bound[i], r);
      for (int v = 0; v <= hi; ++v) {
        if (bacc[states[i]] && (v & 1)) continue;
        f[i] = v;
        int m2 = missing;
        if ((v & 1) && cover[v / 2]++ == 0) --m2;
        self(self, i + 1, m2);
        if (v & 1) --cover[v / 2];
      }
    };
    rec(rec, 0, (r + 1) / 2);
  }
}

class AntichainSearch {
 public:
  AntichainSearch(const Nba& a, const Nba& b, const Limits& limits)
      : a_(a), b_(b), limits_(limits) {
    size_t nacc = 0;
    for (uint8_t f : b.accepting) nacc += f;
    max_rank_ = 2 * static_cast<int>(b.num_states() - nacc);
  }

  InclusionOutcome run() {
    Stopwatch sw;
    BMacro m0;
    m0.set.assign(b_.initial.begin(), b_.initial.end());
    std::sort(m0.set.begin(), m0.set.end());
    m0.set.erase(std::unique(m0.set.begin(), m0.set.end()), m0.set.end());
    for (uint32_t q : a_.initial) try_insert({q, m0}, true);

    for (uint32_t i = 0; i < nodes_.size(); ++i) {
      limits_.deadline.check();
      expand(i);
    }

    InclusionOutcome out;
    out.stats.engine = "antichain";
    out.stats.states_explored = nodes_.size();
    auto lasso = find_lasso();
    out.included = !lasso.has_value();
    if (lasso) out.counterexample = std::move(*lasso);
    out.stats.elapsed_ms = sw.elapsed_ms();
    return out;
  }

 private:
  struct Edge {
    uint32_t dst;
    Cube letter;
  };

  // Insert unless an already-kept waiting node with the same a-state tracks a
  // subset (its counterexample capability dominates). Pruned nodes are never
  // re-explored.
  int try_insert(ProductNode n, bool initial = false) {
    auto it = ids_.find(n);
    if (it != ids_.end()) return static_cast<int>(it->second);
    if (!n.m.tight) {
      auto& anti = waiting_antichain_[n.q];
      for (const auto& s : anti)
        if (std::includes(n.m.set.begin(), n.m.set.end(), s.begin(), s.end()))
          return -1;  // dominated, drop
      anti.push_back(n.m.set);
    }
    limits_.check_states(nodes_.size() + 1, "include_antichain");
    uint32_t id = static_cast<uint32_t>(nodes_.size());
    ids_.emplace(n, id);
    nodes_.push_back(std::move(n));
    adj_.emplace_back();
    if (initial) initials_.push_back(id);
    return static_cast<int>(id);
  }

  void expand(uint32_t i) {
    ProductNode n = nodes_[i];
    // letter classes over every proposition mentioned around this node
    uint64_t mentioned = 0;
    for (const auto& e : a_.edges[n.q]) mentioned |= e.guard.mentioned();
    for (uint32_t s : n.m.set)
      for (const auto& e : b_.edges[s]) mentioned |= e.guard.mentioned();
    std::vector<int> bits;
    for (int bb = 0; bb < kMaxFlatProps; ++bb)
      if (mentioned >> bb & 1) bits.push_back(bb);
    if (bits.size() > 24)
      throw ResourceLimitError("include_antichain: too many propositions per node");

    for (uint64_t asg = 0; asg < (1ull << bits.size()); ++asg) {
      limits_.deadline.check();
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

      // a-moves
      std::vector<uint32_t> amoves;
      for (const auto& e : a_.edges[n.q])
        if (e.guard.matches(letter)) amoves.push_back(e.dst);
      if (amoves.empty()) continue;

      // macro moves
      std::vector<BMacro> mmoves = macro_successors(n.m, letter);

      for (uint32_t q2 : amoves)
        for (const auto& m2 : mmoves) {
          int dst = try_insert({q2, m2});
          if (dst >= 0) adj_[i].push_back(Edge{static_cast<uint32_t>(dst), lc});
        }
    }
  }

  std::vector<BMacro> macro_successors(const BMacro& m, uint64_t letter) {
    std::vector<BMacro> out;
    std::map<uint32_t, int> bound_of;
    for (size_t si = 0; si < m.set.size(); ++si) {
      uint32_t s = m.set[si];
      int bnd = m.tight ? m.rank[si] : max_rank_;
      for (const auto& e : b_.edges[s]) {
        if (!e.guard.matches(letter)) continue;
        auto it = bound_of.find(e.dst);
        if (it == bound_of.end())
          bound_of.emplace(e.dst, bnd);
        else
          it->second = std::min(it->second, bnd);
      }
    }
    std::vector<uint32_t> succ;
    std::vector<int> bound;
    for (const auto& [d, bnd] : bound_of) {
      succ.push_back(d);
      bound.push_back(bnd);
    }

    if (!m.tight) {
      BMacro w;
      w.set = succ;
      out.push_back(std::move(w));
    }
    std::vector<std::vector<int>> ranks;
    tight_rankings(succ, bound, b_.accepting, ranks);
    for (auto& f : ranks) {
      BMacro t;
      t.tight = true;
      t.set = succ;
      if (m.tight && !m.cut.empty()) {
        std::set<uint32_t> from_cut;
        for (size_t si = 0; si < m.set.size(); ++si) {
          uint32_t s = m.set[si];
          if (!std::binary_search(m.cut.begin(), m.cut.end(), s)) continue;
          for (const auto& e : b_.edges[s])
            if (e.guard.matches(letter)) from_cut.insert(e.dst);
        }
        for (size_t si = 0; si < succ.size(); ++si)
          if (from_cut.count(succ[si]) && (f[si] & 1) == 0) t.cut.push_back(succ[si]);
      } else {
        for (size_t si = 0; si < succ.size(); ++si)
          if ((f[si] & 1) == 0) t.cut.push_back(succ[si]);
      }
      t.rank = std::move(f);
      out.push_back(std::move(t));
    }
    return out;
  }

  // Generalized acceptance: a reachable SCC must contain an accepting a-state
  // and a cut-point flush. Returns the counterexample word if one exists.
  std::optional<LassoWord> find_lasso() {
    const size_t n = nodes_.size();
    if (n == 0) return std::nullopt;
    std::vector<std::vector<uint32_t>> plain(n);
    for (size_t v = 0; v < n; ++v)
      for (const auto& e : adj_[v]) plain[v].push_back(e.dst);

    // reachability from initials
    std::vector<uint8_t> reach(n, 0);
    std::vector<uint32_t> work(initials_.begin(), initials_.end());
    for (uint32_t v : initials_) reach[v] = 1;
    while (!work.empty()) {
      uint32_t v = work.back();
      work.pop_back();
      for (uint32_t w : plain[v])
        if (!reach[w]) {
          reach[w] = 1;
          work.push_back(w);
        }
    }

    int num;
    std::vector<int> comp = scc_decompose(n, plain, num);
    std::vector<int> size(num, 0);
    std::vector<uint8_t> self(num, 0), has_acc(num, 0), has_flush(num, 0);
    for (size_t v = 0; v < n; ++v) {
      if (!reach[v]) continue;
      size[comp[v]]++;
      for (uint32_t w : plain[v])
        if (w == v) self[comp[v]] = 1;
      if (a_.accepting[nodes_[v].q]) has_acc[comp[v]] = 1;
      if (nodes_[v].m.flush()) has_flush[comp[v]] = 1;
    }
    int target = -1;
    for (size_t v = 0; v < n && target < 0; ++v) {
      int c = comp[v];
      if (reach[v] && has_acc[c] && has_flush[c] && (size[c] >= 2 || self[c]) &&
          a_.accepting[nodes_[v].q])
        target = static_cast<int>(v);
    }
    if (target < 0) return std::nullopt;

    // stem: initial -> target
    auto bfs = [&](const std::vector<uint32_t>& from, uint32_t to,
                   const std::vector<uint8_t>* within) {
      std::vector<int> pred(n, -2);
      std::vector<uint32_t> queue;
      size_t qi = 0;
      for (uint32_t s : from)
        if (pred[s] == -2 && (!within || (*within)[s])) {
          pred[s] = -1;
          queue.push_back(s);
        }
      while (qi < queue.size()) {
        uint32_t v = queue[qi++];
        if (v == to) break;
        for (uint32_t w : plain[v]) {
          if (within && !(*within)[w]) continue;
          if (pred[w] == -2) {
            pred[w] = static_cast<int>(v);
            queue.push_back(w);
          }
        }
      }
      std::vector<uint32_t> path;
      if (pred[to] == -2) return path;
      for (int v = static_cast<int>(to); v != -1; v = pred[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      return path;
    };

    std::vector<uint32_t> stem = bfs(initials_, static_cast<uint32_t>(target), nullptr);
    // cycle: target -> some flush node in the SCC -> back to target
    std::vector<uint8_t> in_scc(n, 0);
    for (size_t v = 0; v < n; ++v)
      if (reach[v] && comp[v] == comp[target]) in_scc[v] = 1;
    uint32_t flush_node = static_cast<uint32_t>(target);
    if (!nodes_[target].m.flush()) {
      for (size_t v = 0; v < n; ++v)
        if (in_scc[v] && nodes_[v].m.flush()) {
          flush_node = static_cast<uint32_t>(v);
          break;
        }
    }
    std::vector<uint32_t> cyc;
    if (flush_node == static_cast<uint32_t>(target)) {
      // one step out, then back
      for (uint32_t w : plain[target])
        if (in_scc[w]) {
          if (w == static_cast<uint32_t>(target)) {
            cyc = {static_cast<uint32_t>(target), w};
            break;
          }
          auto back = bfs({w}, static_cast<uint32_t>(target), &in_scc);
          if (!back.empty()) {
            cyc.push_back(static_cast<uint32_t>(target));
            cyc.insert(cyc.end(), back.begin(), back.end());
            break;
          }
        }
    } else {
      auto fwd = bfs({static_cast<uint32_t>(target)}, flush_node, &in_scc);
      auto back = bfs({flush_node}, static_cast<uint32_t>(target), &in_scc);
      cyc = fwd;
      cyc.insert(cyc.end(), back.begin() + 1, back.end());
    }
    if (cyc.size() < 2) throw std::logic_error("include_antichain: degenerate cycle");

    auto letter_between = [&](uint32_t u, uint32_t v) -> uint64_t {
      for (const auto& e : adj_[u])
        if (e.dst == v) return e.letter.pos;  // unmentioned props absent
      throw std::logic_error("include_antichain: missing edge");
    };
    LassoWord w;
    w.arity = a_.arity;
    w.ap_count = static_cast<int>(a_.aps.size());
    for (size_t i = 0; i + 1 < stem.size(); ++i)
      w.stem.push_back(letter_between(stem[i], stem[i + 1]));
    for (size_t i = 0; i + 1 < cyc.size(); ++i)
      w.loop.push_back(letter_between(cyc[i], cyc[i + 1]));
    return w;
  }

  const Nba& a_;
  const Nba& b_;
  Limits limits_;
  int max_rank_;
  std::map<ProductNode, uint32_t> ids_;
  std::vector<ProductNode> nodes_;
  std::vector<std::vector<Edge>> adj_;
  std::vector<uint32_t> initials_;
  std::map<uint32_t, std::vector<std::vector<uint32_t>>> waiting_antichain_;
};

}  // namespace

InclusionOutcome include_antichain(const Nba& a, const Nba& b, const Limits& limits) {
  if (a.arity != b.arity || a.aps != b.aps)
    throw ValidationError("inclusion: arity/alphabet mismatch");
  return AntichainSearch(a, b, limits).run();
}

// ---------------------------------------------------------------------------
// External engine
// ---------------------------------------------------------------------------

namespace {

struct CommandResult {
  int exit_code;
  std::string out;
};

CommandResult run_command(const std::string& cmd, const Deadline& deadline) {
  int fds[2];
  if (pipe(fds) != 0) throw ExternalToolError("pipe() failed");
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw ExternalToolError("fork() failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);
  int flags = fcntl(fds[0], F_GETFL, 0);
  fcntl(fds[0], F_SETFL, flags | O_NONBLOCK);

  std::string out;
  char buf[4096];
  bool timed_out = false;
  while (true) {
    if (deadline.expired()) {
      timed_out = true;
      kill(-pid, SIGKILL);
    }
    ssize_t got = read(fds[0], buf, sizeof buf);
    if (got > 0) {
      out.append(buf, static_cast<size_t>(got));
      continue;
    }
    if (got == 0) break;
    if (errno == EAGAIN || errno == EWOULDBLOCK) {
      int status;
      pid_t r = waitpid(pid, &status, WNOHANG);
      if (r == pid) {
        // drain what remains
        while ((got = read(fds[0], buf, sizeof buf)) > 0)
          out.append(buf, static_cast<size_t>(got));
        close(fds[0]);
        if (timed_out) throw ExternalToolError("external tool timed out");
        return {WIFEXITED(status) ? WEXITSTATUS(status) : 128, out};
      }
      usleep(2000);
      continue;
    }
    break;
  }
  close(fds[0]);
  int status;
  waitpid(pid, &status, 0);
  if (timed_out) throw ExternalToolError("external tool timed out");
  return {WIFEXITED(status) ? WEXITSTATUS(status) : 128, out};
}

std::string write_temp(const std::string& content, const char* tag) {
  std::string tmpl = std::string("/tmp/hymc_") + tag + "_XXXXXX";
  std::vector<char> path(tmpl.begin(), tmpl.end());
  path.push_back('\0');
  int fd = mkstemp(path.data());
  if (fd < 0) throw ExternalToolError("mkstemp failed");
  FILE* f = fdopen(fd, "w");
  fwrite(content.data(), 1, content.size(), f);
  fclose(f);
  return std::string(path.data());
}

std::string substitute(std::string tmpl, const std::string& key, const std::string& val) {
  auto pos = tmpl.find(key);
  while (pos != std::string::npos) {
    tmpl.replace(pos, key.size(), val);
    pos = tmpl.find(key, pos + val.size());
  }
  return tmpl;
}

}  // namespace

InclusionOutcome include_external(const Nba& a, const Nba& b, const std::string& command_template,
                                  const Limits& limits) {
  if (a.arity != b.arity || a.aps != b.aps)
    throw ValidationError("inclusion: arity/alphabet mismatch");
  if (a.flat_props() > kMaxBaProps)
    throw ExternalToolError("alphabet too large for the external-tool protocol (2^" +
                            std::to_string(a.flat_props()) + " letters)");
  Stopwatch sw;
  std::string fa = write_temp(export_ba(a), "A");
  std::string fb = write_temp(export_ba(b), "B");
  std::string cmd = substitute(substitute(command_template, "{A}", fa), "{B}", fb);
  CommandResult res;
  try {
    res = run_command(cmd, limits.deadline);
  } catch (...) {
    unlink(fa.c_str());
    unlink(fb.c_str());
    throw;
  }
  unlink(fa.c_str());
  unlink(fb.c_str());
  if (res.exit_code != 0)
    throw ExternalToolError("external tool exited with code " + std::to_string(res.exit_code));

  InclusionOutcome out;
  out.stats = {"external", 0, 0};
  bool verdict_seen = false;
  std::istringstream is(res.out);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("NOT INCLUDED", 0) == 0) {
      out.included = false;
      verdict_seen = true;
    } else if (line.rfind("INCLUDED", 0) == 0) {
      out.included = true;
      verdict_seen = true;
    } else if (line.rfind("CEX:", 0) == 0) {
      auto dollar = line.find('$');
      if (dollar == std::string::npos)
        throw ExternalToolError("unparseable CEX line: " + line);
      LassoWord w;
      w.arity = a.arity;
      w.ap_count = static_cast<int>(a.aps.size());
      std::istringstream stem_s(line.substr(4, dollar - 4)), loop_s(line.substr(dollar + 1));
      uint64_t v;
      while (stem_s >> v) w.stem.push_back(v);
      while (loop_s >> v) w.loop.push_back(v);
      if (w.loop.empty()) throw ExternalToolError("CEX with empty loop: " + line);
      out.counterexample = std::move(w);
    }
  }
  if (!verdict_seen)
    throw ExternalToolError("external tool produced no INCLUDED/NOT INCLUDED line");
  out.stats.elapsed_ms = sw.elapsed_ms();
  return out;
}

}  // namespace hymc
