// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion pins its thresholds in code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hymc/automata_ops.hpp"
#include "hymc/bench.hpp"
#include "hymc/boolprog.hpp"
#include "hymc/checker.hpp"
#include "hymc/inclusion.hpp"
#include "hymc/io_automata.hpp"
#include "hymc/ltl2nba.hpp"
#include "hymc/oracle.hpp"
#include "support.hpp"

using namespace hymc;
using namespace testsup;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << idx << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1: GNI verdicts on hand-encoded 1-bit boolean programs ----------------

const char* kGniSafe[] = {
    // output copies the low input
    "var h, l, o; observe h as h; observe l as l; observe o as o;\n"
    "while (true) { h := input(); l := input(); o := l; }\n",
    // same function through control flow
    "var h, l, o; observe h as h; observe l as l; observe o as o;\n"
    "while (true) { h := input(); l := input(); if (l) { o := true; } else { o := false; } }\n",
    // high input cancels out
    "var h, l, o; observe h as h; observe l as l; observe o as o;\n"
    "while (true) { h := input(); l := input(); o := l | (h & !h); }\n",
    // constant output
    "var h, l, o; observe h as h; observe l as l; observe o as o;\n"
    "while (true) { h := input(); o := false; l := input(); }\n",
    // output ignores everything but the low input history
    "var h, l, o, m; observe h as h; observe l as l; observe o as o;\n"
    "while (true) { h := input(); l := input(); m := l; o := m; }\n",
};

const char* kGniLeaky[] = {
    // output copies the high input
    "var h, l, o; observe h as h; observe l as l; observe o as o;\n"
    "while (true) { h := input(); l := input(); o := h; }\n",
    // output mixes high into low
    "var h, l, o; observe h as h; observe l as l; observe o as o;\n"
    "while (true) { h := input(); l := input(); o := h ^ l; }\n",
};

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  HyperFormula gni = bench::gni_formula({"h"}, {"l"}, {"o"});
  bool ok = true;
  std::string detail;
  int idx = 0;
  for (const char* src : kGniSafe) {
    TransitionSystem t = explode_program(parse_boolprog(src), 1);
    if (!check(t, gni).holds) {
      ok = false;
      detail += "safe#" + std::to_string(idx) + " did not hold; ";
    }
    ++idx;
  }
  idx = 0;
  for (const char* src : kGniLeaky) {
    TransitionSystem t = explode_program(parse_boolprog(src), 1);
    if (check(t, gni).holds) {
      ok = false;
      detail += "leaky#" + std::to_string(idx) + " held; ";
    }
    ++idx;
  }
  double secs = seconds_since(t0);
  if (secs > 10.0) {
    ok = false;
    detail += "runtime " + std::to_string(secs) + "s > 10s";
  }
  report(1, "GNI verdicts on 5 safe + 2 leaky 1-bit programs", ok, detail);
}

// --- 2 & 3: oracle equivalence and strategy agreement ----------------------

struct CorpusInstance {
  TransitionSystem t;
  HyperFormula f;
};

std::vector<CorpusInstance> build_corpus() {
  // every alternation pattern represented >= 30 times; bodies <= size 8;
  // systems <= 5 states
  const char* patterns[] = {"ae", "ea", "aea", "eae", "aa", "ee", "aae", "ea", "ae", "eae"};
  std::vector<CorpusInstance> corpus;
  uint64_t seed = 0;
  std::vector<int> per_pattern(4, 0);  // ae, ea, aea, eae counters
  auto pattern_slot = [](const std::string& p) {
    if (p == "ae") return 0;
    if (p == "ea") return 1;
    if (p == "aea") return 2;
    if (p == "eae") return 3;
    return -1;
  };
  while (corpus.size() < 320) {
    const char* pat = patterns[seed % 10];
    TransitionSystem t = random_system(5, 2, seed * 3 + 1);
    HyperFormula f = bench::gen_formula(pat, 1 + seed % 8, 2, seed * 7 + 2);
    corpus.push_back({std::move(t), std::move(f)});
    int slot = pattern_slot(pat);
    if (slot >= 0) per_pattern[slot]++;
    ++seed;
  }
  for (int c : per_pattern)
    if (c < 30) throw std::logic_error("corpus underrepresents a pattern");
  return corpus;
}

void criterion_2_and_3(const std::vector<CorpusInstance>& corpus) {
  auto t0 = std::chrono::steady_clock::now();
  int disagreements = 0, checked = 0;
  int incl_disagreements = 0, incl_checked = 0;
  std::string detail;
  for (const auto& inst : corpus) {
    bool ref;
    try {
      ref = oracle::decide_naive(inst.t, inst.f);
    } catch (const OracleBoundsError&) {
      continue;
    }
    CheckOptions abv;
    abv.strategy = Strategy::PureAbv;
    Verdict vp = check(inst.t, inst.f, abv);
    if (vp.holds != ref) ++disagreements;
    CheckOptions aut;
    aut.strategy = Strategy::Auto;
    if (check(inst.t, inst.f, aut).holds != ref) ++disagreements;
    ++checked;

    if (!inst.f.prefix.empty() && inst.f.prefix[0].first == Quantifier::Forall) {
      CheckOptions inc;
      inc.strategy = Strategy::Inclusion;
      if (check(inst.t, inst.f, inc).holds != vp.holds) ++incl_disagreements;
      ++incl_checked;
    }
  }
  double secs = seconds_since(t0);
  bool ok2 = checked >= 300 && disagreements == 0 && secs <= 300.0;
  report(2, "oracle equivalence on the random corpus", ok2,
         std::to_string(checked) + " instances, " + std::to_string(disagreements) +
             " disagreements, " + std::to_string(secs) + "s");
  bool ok3 = incl_checked >= 100 && incl_disagreements == 0;
  report(3, "inclusion strategy == pure-abv on universal-leading instances", ok3,
         std::to_string(incl_checked) + " instances, " + std::to_string(incl_disagreements) +
             " disagreements");
}

// --- 4: translation fidelity ------------------------------------------------

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  int disagreements = 0, checked = 0;
  for (uint64_t seed = 0; seed < 1050; ++seed) {
    std::vector<std::string> vars = seed % 2 ? std::vector<std::string>{"p"}
                                             : std::vector<std::string>{"p", "q"};
    LtlRef body = bench::gen_ltl_body(1 + seed % 10, 2, vars, seed);
    Nba a = ltl_to_nba(to_nnf(body), vars, aps(2));
    auto asg = random_assignment(vars, 2, 3, 3, seed * 13 + 5);
    if (member(a, asg.zipped()) != oracle::eval(body, asg)) ++disagreements;
    ++checked;
  }
  double secs = seconds_since(t0);
  bool ok = checked >= 1000 && disagreements == 0 && secs <= 120.0;
  report(4, "translation fidelity vs the evaluation oracle", ok,
         std::to_string(checked) + " pairs, " + std::to_string(disagreements) +
             " disagreements, " + std::to_string(secs) + "s");
}

// --- 5: complementation soundness -------------------------------------------

void criterion_5() {
  int xor_failures = 0, nonempty_intersections = 0, checked = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Nba a = random_nba(5, 1, 2, seed * 37 + 3);
    Nba c = complement(a);
    for (uint64_t s = 0; s < 50; ++s) {
      LassoWord w = random_lasso(1, 2, 2, 3, seed * 555 + s);
      if (member(a, w) == member(c, w)) ++xor_failures;
    }
    if (!emptiness(intersect(a, c)).empty) ++nonempty_intersections;
    ++checked;
  }
  bool ok = checked >= 200 && xor_failures == 0 && nonempty_intersections == 0;
  report(5, "complementation soundness (membership XOR, empty intersection)", ok,
         std::to_string(checked) + " automata, " + std::to_string(xor_failures) +
             " XOR failures, " + std::to_string(nonempty_intersections) +
             " nonempty intersections");
}

// --- 6: inclusion engine agreement -------------------------------------------

void criterion_6() {
  int disagreements = 0, invalid_cx = 0, checked = 0;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Nba a = random_nba(5, 1, 2, seed * 2 + 10);
    Nba b = random_nba(5, 1, 2, seed * 2 + 11);
    InclusionOutcome oc = include_complement(a, b);
    InclusionOutcome oa = include_antichain(a, b);
    if (oc.included != oa.included) ++disagreements;
    for (const auto* o : {&oc, &oa})
      if (!o->included) {
        if (!o->counterexample || !member(a, *o->counterexample) ||
            member(b, *o->counterexample))
          ++invalid_cx;
      }
    ++checked;
  }
  bool ok = checked >= 300 && disagreements == 0 && invalid_cx == 0;
  report(6, "inclusion engines agree; counterexamples validate", ok,
         std::to_string(checked) + " pairs, " + std::to_string(disagreements) +
             " disagreements, " + std::to_string(invalid_cx) + " invalid counterexamples");
}

// --- 7: multi-alternation feasibility ----------------------------------------

void criterion_7() {
  const char* patterns[] = {"ae", "aea", "aeae", "aeaea"};  // 1..4 alternations
  int total = 0, completed = 0, stats_bad = 0;
  for (int pi = 0; pi < 4; ++pi) {
    for (int s = 0; s < 10; ++s) {
      uint64_t seed = 9000 + pi * 100 + s;
      TransitionSystem t = bench::gen_system(20, 5.0 / 20.0, 2, seed);
      HyperFormula f = bench::gen_formula(patterns[pi], 10, 2, seed ^ 0xfeed);
      CheckOptions opts;
      opts.strategy = Strategy::Auto;
      opts.engine.kind = EngineKind::Antichain;
      opts.limits.deadline = Deadline::after_seconds(30.0);
      ++total;
      try {
        Verdict v = check(t, f, opts);
        ++completed;
        size_t expect = v.inclusion_shortcut
                            ? static_cast<size_t>(std::max(0, v.alternations - 1))
                            : static_cast<size_t>(v.alternations);
        if (v.complement_count != expect) ++stats_bad;
      } catch (const TimeoutError&) {
      } catch (const ResourceLimitError&) {
      }
    }
  }
  double rate = total ? 100.0 * completed / total : 0;
  bool ok = rate >= 80.0 && stats_bad == 0;
  report(7, "multi-alternation sweep feasibility and complement accounting", ok,
         std::to_string(completed) + "/" + std::to_string(total) + " completed (" +
             std::to_string(rate) + "%), " + std::to_string(stats_bad) + " bad stat records");
}

// --- 8: generator statistics --------------------------------------------------

void criterion_8() {
  bench::GenStats gs;
  bench::gen_system(1000, 10.0 / 1000.0, 1, 424242, &gs);
  double mean = static_cast<double>(gs.er_edges) / 1000.0;
  bool ok = mean >= 9.0 && mean <= 11.0;
  report(8, "pre-repair mean outdegree 10 +/- 1 at n=1000, p=10/n", ok,
         "mean = " + std::to_string(mean));
}

// --- 9: format round-trips ------------------------------------------------------

void criterion_9() {
  int bad = 0, checked = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    // system files
    TransitionSystem t = bench::gen_system(1 + seed % 10, 0.3, 2, seed);
    TransitionSystem t2 = parse_system(print_system(t));
    if (t2.succ != t.succ || t2.label != t.label || t2.initial != t.initial ||
        t2.aps != t.aps)
      ++bad;
    // formula files
    HyperFormula f = bench::gen_formula(seed % 2 ? "ae" : "aea", 1 + seed % 10, 2, seed);
    if (!equal(parse_hyperltl(to_string(f)), f)) ++bad;
    // hoa-like automata, compared by sampled membership
    Nba a = random_nba(5, 2, 2, seed * 3 + 7);
    Nba b = import_hoa_like(export_hoa_like(a));
    for (uint64_t s = 0; s < 10; ++s) {
      LassoWord w = random_lasso(2, 2, 2, 2, seed * 100 + s);
      if (member(a, w) != member(b, w)) ++bad;
    }
    ++checked;
  }
  bool ok = checked >= 100 && bad == 0;
  report(9, "format round-trips (system, formula, hoa-like)", ok,
         std::to_string(checked) + " seeds, " + std::to_string(bad) + " failures");
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  auto corpus = build_corpus();
  criterion_2_and_3(corpus);
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
            << seconds_since(t0) << "s total)" << std::endl;
  return failures == 0 ? 0 : 1;
}
