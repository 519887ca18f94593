#pragma once

#include <optional>
#include <string>

#include "hymc/nba.hpp"

namespace hymc {

struct InclusionStats {
  std::string engine;
  size_t states_explored = 0;
  double elapsed_ms = 0;
};

/// Outcome of a language-inclusion query L(A) subseteq L(B). When not
/// included, the counterexample satisfies member(A,cx) && !member(B,cx).
struct InclusionOutcome {
  bool included = false;
  std::optional<LassoWord> counterexample;
  InclusionStats stats;
};

/// Inclusion via complement(b), intersection and emptiness.
InclusionOutcome include_complement(const Nba& a, const Nba& b, const Limits& limits = {});

/// On-the-fly search over (a-state, rank-macro-state) pairs of a x comp(b)
/// without materializing comp(b). Subset-phase nodes are pruned by an
/// antichain (a smaller tracked subset dominates); ranking-phase nodes are
/// explored exactly, which keeps extracted counterexamples genuine.
InclusionOutcome include_antichain(const Nba& a, const Nba& b, const Limits& limits = {});

/// Writes both automata in the explicit `ba` format, substitutes {A} and {B}
/// in the command template, runs it, and parses the protocol output
/// (`INCLUDED` / `NOT INCLUDED`, optional `CEX: <stem>$<loop>` with letter
/// ids). Tool failure, timeout and unparseable output raise ExternalToolError,
/// never a verdict.
InclusionOutcome include_external(const Nba& a, const Nba& b, const std::string& command_template,
                                  const Limits& limits = {});

}  // namespace hymc
