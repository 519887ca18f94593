#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hymc/checker.hpp"
#include "hymc/formula.hpp"
#include "hymc/system.hpp"

namespace hymc::bench {

struct GenStats {
  size_t er_edges = 0;        // edges sampled before any repair
  size_t repair_edges = 0;    // edges added by connectivity/totality repair
};

/// Random system: every ordered pair (including self-loops) gets an edge with
/// probability p, then the graph is made connected from state 0 by adding one
/// edge from a random reached state to each unreached state, and every
/// successor-less state gets one random outgoing edge. Each AP labels each
/// state independently with probability 1/2. Pure function of the arguments.
TransitionSystem gen_system(size_t n, double p, int ap_count, uint64_t seed,
                            GenStats* stats = nullptr);

/// Random quantifier-free body with exactly `size` nodes; atoms uniform over
/// (AP x vars). Operator weights: atom .35, not .1, and/or .2, X .1, U/R .15,
/// G/F .1 (infeasible picks at the remaining budget are redrawn).
LtlRef gen_ltl_body(int size, int ap_count, const std::vector<std::string>& vars,
                    uint64_t seed);

/// Prefix from the pattern ('a' = forall, 'e' = exists; variables p1..pk)
/// plus a random body of exactly `body_size` nodes.
HyperFormula gen_formula(const std::string& pattern, int body_size, int ap_count,
                         uint64_t seed);

/// AP names used by the generators: a, b, c, ...
std::vector<std::string> default_aps(int ap_count);

/// The generalized-noninterference template over high inputs H, low inputs L
/// and observable outputs O (forall p1. forall p2. exists p3. ...).
HyperFormula gni_formula(const std::vector<std::string>& high,
                         const std::vector<std::string>& low,
                         const std::vector<std::string>& out);

struct ExportedInstance {
  std::vector<std::string> files;   // written paths
  std::vector<std::string> notes;   // e.g. skipped ba export
};

/// Writes self_composition(t,n) and the suffix automaton of a
/// universal-leading formula as <prefix>.{sys,phi}.hoa, plus .ba files when
/// the explicit alphabet is small enough (a note records a skip).
ExportedInstance export_inclusion_instance(const TransitionSystem& t, const HyperFormula& f,
                                           const std::string& out_prefix,
                                           const Limits& limits = {});

struct SweepConfig {
  std::vector<size_t> sizes;        // system sizes
  std::vector<double> densities;    // absolute edge probabilities...
  double outdegree = 0;             // ...or expected outdegree k (p = k/n)
  std::vector<std::string> patterns;
  int samples = 10;
  int body_size = 10;
  int ap_count = 2;
  uint64_t seed0 = 1;
  double timeout_secs = 10.0;
  Strategy strategy = Strategy::Auto;
  EngineKind engine = EngineKind::Complement;
  int jobs = 1;
};

/// key=value lines; lists comma-separated. Keys: sizes, densities, outdegree,
/// patterns, samples, body_size, ap_count, seed0, timeout, strategy, engine,
/// jobs.
SweepConfig parse_sweep_config(const std::string& text);

/// Runs check on every (size, density, pattern, sample) cell and returns CSV
/// rows `pattern,n,p,body_size,seed,verdict,wall_ms,complement_ms_list,
/// stage_sizes,engine,status`. Timeouts are data (status TIMEOUT), never
/// verdicts. Deterministic for fixed seeds, also with jobs > 1.
std::string sweep(const SweepConfig& cfg);

}  // namespace hymc::bench
