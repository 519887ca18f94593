#include "hymc/bench.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "hymc/io_automata.hpp"

namespace hymc::bench {

std::vector<std::string> default_aps(int ap_count) {
  std::vector<std::string> aps;
  for (int i = 0; i < ap_count; ++i) {
    std::string name;
    int v = i;
    do {
      name.insert(name.begin(), static_cast<char>('a' + v % 26));
      v = v / 26 - 1;
    } while (v >= 0);
    aps.push_back(name);
  }
  return aps;
}

TransitionSystem gen_system(size_t n, double p, int ap_count, uint64_t seed,
                            GenStats* stats) {
  if (n < 1) throw ValidationError("gen_system: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  TransitionSystem t;
  t.aps = default_aps(ap_count);
  t.initial.push_back(0);
  t.succ.resize(n);
  t.label.resize(n, 0);

  GenStats gs;
  for (size_t s = 0; s < n; ++s)
    for (size_t d = 0; d < n; ++d)
      if (coin(rng) < p) {
        t.succ[s].push_back(static_cast<uint32_t>(d));
        gs.er_edges++;
      }
  for (size_t s = 0; s < n; ++s)
    for (int j = 0; j < ap_count; ++j)
      if (coin(rng) < 0.5) t.label[s] |= 1ull << j;

  // connectivity repair: walk unreached states in index order, each gets one
  // edge from a random already-reached state
  std::vector<uint8_t> reached(n, 0);
  std::vector<uint32_t> reach_list;
  auto grow = [&](uint32_t root) {
    std::vector<uint32_t> work{root};
    if (!reached[root]) {
      reached[root] = 1;
      reach_list.push_back(root);
    }
    while (!work.empty()) {
      uint32_t v = work.back();
      work.pop_back();
      for (uint32_t w : t.succ[v])
        if (!reached[w]) {
          reached[w] = 1;
          reach_list.push_back(w);
          work.push_back(w);
        }
    }
  };
  grow(0);
  for (size_t s = 0; s < n; ++s) {
    if (reached[s]) continue;
    std::uniform_int_distribution<size_t> pick(0, reach_list.size() - 1);
    uint32_t from = reach_list[pick(rng)];
    t.succ[from].push_back(static_cast<uint32_t>(s));
    gs.repair_edges++;
    grow(static_cast<uint32_t>(s));
  }
  // totality repair
  for (size_t s = 0; s < n; ++s)
    if (t.succ[s].empty()) {
      std::uniform_int_distribution<size_t> pick(0, n - 1);
      t.succ[s].push_back(static_cast<uint32_t>(pick(rng)));
      gs.repair_edges++;
    }
  for (auto& row : t.succ) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  validate(t);
  if (stats) *stats = gs;
  return t;
}

namespace {

LtlRef gen_body_rec(int size, const std::vector<std::string>& aps,
                    const std::vector<std::string>& vars, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto leaf = [&]() -> LtlRef {
    // constants are rare; atoms uniform over AP x vars
    if (coin(rng) < 0.05) return coin(rng) < 0.5 ? ltl::tt() : ltl::ff();
    std::uniform_int_distribution<size_t> pa(0, aps.size() - 1);
    std::uniform_int_distribution<size_t> pv(0, vars.size() - 1);
    return ltl::atom(aps[pa(rng)], vars[pv(rng)]);
  };
  if (size <= 1) return leaf();

  // weights: atom .35, not .1, and/or .2, X .1, U/R .15, G/F .1
  while (true) {
    double r = coin(rng);
    if (r < 0.35) {
      if (size == 1) return leaf();
      continue;  // leaf does not fit the remaining budget
    }
    if (r < 0.45) {  // not
      return ltl::make_not(gen_body_rec(size - 1, aps, vars, rng));
    }
    if (r < 0.65) {  // and / or
      if (size < 3) continue;
      std::uniform_int_distribution<int> split(1, size - 2);
      int ls = split(rng);
      LtlRef l = gen_body_rec(ls, aps, vars, rng);
      LtlRef rr = gen_body_rec(size - 1 - ls, aps, vars, rng);
      return coin(rng) < 0.5 ? ltl::make_and(l, rr) : ltl::make_or(l, rr);
    }
    if (r < 0.75) {  // X
      return ltl::next(gen_body_rec(size - 1, aps, vars, rng));
    }
    if (r < 0.90) {  // U / R
      if (size < 3) continue;
      std::uniform_int_distribution<int> split(1, size - 2);
      int ls = split(rng);
      LtlRef l = gen_body_rec(ls, aps, vars, rng);
      LtlRef rr = gen_body_rec(size - 1 - ls, aps, vars, rng);
      return coin(rng) < 0.5 ? ltl::until(l, rr) : ltl::release(l, rr);
    }
    // G / F
    LtlRef sub = gen_body_rec(size - 1, aps, vars, rng);
    return coin(rng) < 0.5 ? ltl::globally(sub) : ltl::eventually(sub);
  }
}

}  // namespace

LtlRef gen_ltl_body(int size, int ap_count, const std::vector<std::string>& vars,
                    uint64_t seed) {
  if (size < 1) throw ValidationError("gen_ltl_body: size must be >= 1");
  if (ap_count < 1) throw ValidationError("gen_ltl_body: ap_count must be >= 1");
  if (vars.empty()) throw ValidationError("gen_ltl_body: no trace variables");
  std::mt19937_64 rng(seed);
  return gen_body_rec(size, default_aps(ap_count), vars, rng);
}

HyperFormula gen_formula(const std::string& pattern, int body_size, int ap_count,
                         uint64_t seed) {
  HyperFormula f;
  std::vector<std::string> vars;
  for (size_t i = 0; i < pattern.size(); ++i) {
    char c = pattern[i];
    if (c != 'a' && c != 'e')
      throw ValidationError("gen_formula: pattern must use only 'a' and 'e'");
    std::string v = "p" + std::to_string(i + 1);
    f.prefix.emplace_back(c == 'a' ? Quantifier::Forall : Quantifier::Exists, v);
    vars.push_back(v);
  }
  if (vars.empty()) throw ValidationError("gen_formula: empty pattern");
  f.body = gen_ltl_body(body_size, ap_count, vars, seed);
  validate(f);
  return f;
}

HyperFormula gni_formula(const std::vector<std::string>& high,
                         const std::vector<std::string>& low,
                         const std::vector<std::string>& out) {
  auto conj = [](const std::vector<std::string>& aps, const std::string& va,
                 const std::string& vb) {
    LtlRef acc;
    for (const auto& ap : aps) {
      // a_va <-> a_vb
      LtlRef a = ltl::atom(ap, va), b = ltl::atom(ap, vb);
      LtlRef iff = ltl::make_and(ltl::make_or(ltl::make_not(a), b),
                                 ltl::make_or(ltl::make_not(b), a));
      acc = acc ? ltl::make_and(acc, iff) : iff;
    }
    return acc ? acc : ltl::tt();
  };
  std::vector<std::string> low_out = low;
  low_out.insert(low_out.end(), out.begin(), out.end());
  HyperFormula f;
  f.prefix = {{Quantifier::Forall, "p1"}, {Quantifier::Forall, "p2"}, {Quantifier::Exists, "p3"}};
  f.body = ltl::make_and(ltl::globally(conj(high, "p1", "p3")),
                         ltl::globally(conj(low_out, "p2", "p3")));
  return f;
}

ExportedInstance export_inclusion_instance(const TransitionSystem& t, const HyperFormula& f,
                                           const std::string& out_prefix,
                                           const Limits& limits) {
  InclusionInstance inst = build_inclusion_instance(t, f, limits);
  ExportedInstance ex;
  auto write = [&](const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot write " + path);
    os << content;
    ex.files.push_back(path);
  };
  write(out_prefix + ".sys.hoa", export_hoa_like(inst.sys));
  write(out_prefix + ".phi.hoa", export_hoa_like(inst.phi));
  if (inst.sys.flat_props() <= kMaxBaProps) {
    write(out_prefix + ".sys.ba", export_ba(inst.sys));
    write(out_prefix + ".phi.ba", export_ba(inst.phi));
  } else {
    ex.notes.push_back("ba export skipped: alphabet too large (2^" +
                       std::to_string(inst.sys.flat_props()) + " letters)");
  }
  return ex;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank) throw ParseError("sweep config: expected key=value", lineno, 1);
      continue;
    }
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    auto split_list = [&](const std::string& s) {
      std::vector<std::string> out;
      std::istringstream ls(s);
      std::string item;
      while (std::getline(ls, item, ',')) out.push_back(trim(item));
      return out;
    };
    try {
      if (key == "sizes") {
        for (const auto& x : split_list(val)) cfg.sizes.push_back(std::stoul(x));
      } else if (key == "densities") {
        for (const auto& x : split_list(val)) cfg.densities.push_back(std::stod(x));
      } else if (key == "outdegree") {
        cfg.outdegree = std::stod(val);
      } else if (key == "patterns") {
        cfg.patterns = split_list(val);
      } else if (key == "samples") {
        cfg.samples = std::stoi(val);
      } else if (key == "body_size") {
        cfg.body_size = std::stoi(val);
      } else if (key == "ap_count") {
        cfg.ap_count = std::stoi(val);
      } else if (key == "seed0") {
        cfg.seed0 = std::stoull(val);
      } else if (key == "timeout") {
        cfg.timeout_secs = std::stod(val);
      } else if (key == "jobs") {
        cfg.jobs = std::stoi(val);
      } else if (key == "strategy") {
        if (val == "auto") cfg.strategy = Strategy::Auto;
        else if (val == "pure-abv") cfg.strategy = Strategy::PureAbv;
        else if (val == "inclusion") cfg.strategy = Strategy::Inclusion;
        else throw ParseError("sweep config: unknown strategy " + val, lineno, 1);
      } else if (key == "engine") {
        if (val == "complement") cfg.engine = EngineKind::Complement;
        else if (val == "antichain") cfg.engine = EngineKind::Antichain;
        else throw ParseError("sweep config: unknown engine " + val, lineno, 1);
      } else {
        throw ParseError("sweep config: unknown key " + key, lineno, 1);
      }
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError("sweep config: bad value for " + key, lineno, 1);
    }
  }
  if (cfg.sizes.empty()) throw ParseError("sweep config: sizes missing");
  if (cfg.patterns.empty()) throw ParseError("sweep config: patterns missing");
  if (cfg.densities.empty() && cfg.outdegree <= 0)
    throw ParseError("sweep config: need densities or outdegree");
  return cfg;
}

namespace {

struct Cell {
  std::string pattern;
  size_t n;
  double p;
  uint64_t seed;
};

std::string run_cell(const Cell& c, const SweepConfig& cfg) {
  std::ostringstream row;
  row << c.pattern << ',' << c.n << ',' << c.p << ',' << cfg.body_size << ',' << c.seed << ',';
  CheckOptions opts;
  opts.strategy = cfg.strategy;
  opts.engine.kind = cfg.engine;
  opts.limits.deadline = Deadline::after_seconds(cfg.timeout_secs);
  std::string verdict = "-", status = "OK", engine;
  double wall = 0;
  std::string comp_ms, sizes;
  try {
    TransitionSystem t = gen_system(c.n, c.p, cfg.ap_count, c.seed);
    HyperFormula f = gen_formula(c.pattern, cfg.body_size, cfg.ap_count, c.seed ^ 0x9e3779b97f4a7c15ull);
    Verdict v = check(t, f, opts);
    verdict = v.holds ? "HOLDS" : "FAILS";
    wall = v.total_ms;
    engine = v.engine_used;
    bool first = true;
    for (const auto& s : v.stages) {
      if (s.name == "complement") {
        if (!first) comp_ms += ';';
        comp_ms += std::to_string(s.ms);
        first = false;
      }
    }
    first = true;
    for (const auto& s : v.stages) {
      if (!first) sizes += ';';
      sizes += s.name + ":" + std::to_string(s.states);
      first = false;
    }
  } catch (const TimeoutError&) {
    status = "TIMEOUT";
  } catch (const ResourceLimitError&) {
    status = "CAP";
  } catch (const std::exception&) {
    status = "ERROR";
  }
  row << verdict << ',' << wall << ',' << comp_ms << ',' << sizes << ',' << engine << ','
      << status;
  return row.str();
}

}  // namespace

std::string sweep(const SweepConfig& cfg) {
  std::vector<double> densities = cfg.densities;
  std::vector<Cell> cells;
  uint64_t idx = 0;
  for (const auto& pattern : cfg.patterns)
    for (size_t n : cfg.sizes) {
      std::vector<double> ps = densities;
      if (ps.empty()) ps.push_back(cfg.outdegree / static_cast<double>(n));
      for (double p : ps)
        for (int s = 0; s < cfg.samples; ++s) {
          cells.push_back(Cell{pattern, n, p, cfg.seed0 + idx});
          ++idx;
        }
    }

  std::vector<std::string> rows(cells.size());
  if (cfg.jobs <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) rows[i] = run_cell(cells[i], cfg);
  } else {
    std::mutex mu;
    size_t next = 0;
    auto worker = [&] {
      while (true) {
        size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= cells.size()) return;
          i = next++;
        }
        rows[i] = run_cell(cells[i], cfg);
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < cfg.jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::string csv = "pattern,n,p,body_size,seed,verdict,wall_ms,complement_ms_list,stage_sizes,engine,status\n";
  for (const auto& r : rows) csv += r + "\n";
  return csv;
}

}  // namespace hymc::bench
