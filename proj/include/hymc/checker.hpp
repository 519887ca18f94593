#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hymc/formula.hpp"
#include "hymc/inclusion.hpp"
#include "hymc/nba.hpp"
#include "hymc/system.hpp"

namespace hymc {

enum class Strategy { Auto, PureAbv, Inclusion };

enum class EngineKind { Complement, Antichain, External };

struct Engine {
  EngineKind kind = EngineKind::Complement;
  std::string external_cmd;  // External only

  static Engine complement() { return {EngineKind::Complement, ""}; }
  static Engine antichain() { return {EngineKind::Antichain, ""}; }
  static Engine external(std::string cmd) { return {EngineKind::External, std::move(cmd)}; }
};

struct CheckOptions {
  Strategy strategy = Strategy::Auto;
  Engine engine;
  Limits limits;
};

struct StageStat {
  std::string name;
  size_t states = 0;
  double ms = 0;
};

enum class WitnessRole { ExistentialWitness, UniversalCounterexample };

struct Verdict {
  bool holds = false;
  std::optional<LassoWord> witness;
  std::optional<WitnessRole> witness_role;
  size_t complement_count = 0;    // quantifier-elimination complementations
  int alternations = 0;           // of the checked (possibly negated) formula
  bool inclusion_shortcut = false;
  std::vector<StageStat> stages;
  std::string strategy_used;
  std::string engine_used;
  double total_ms = 0;
};

/// Decides T |= f by iterative quantifier elimination; the inclusion strategy
/// absorbs the outermost universal block into a language-inclusion query on
/// the self-composition (an existential-leading prefix is checked negated and
/// flipped). Resource failures (caps, timeouts, external-tool errors) are
/// thrown, never turned into verdicts.
Verdict check(const TransitionSystem& t, const HyperFormula& f, const CheckOptions& opts = {});

/// The witness stored by the inclusion strategy: the zipped universal-block
/// counterexample of a failing universal-leading formula, or the existential
/// witness of a holding existential-leading formula. Throws ValidationError
/// when the verdict shape admits none.
std::pair<LassoWord, WitnessRole> extract_witness(const Verdict& v);

/// Per-stage sizes/times, human-readable or CSV.
std::string stats_report(const Verdict& v, bool csv);

/// The two sides of the Prop-style inclusion reduction for a universal-leading
/// formula: self_composition(t, n) and the suffix automaton (used for
/// benchmark export).
struct InclusionInstance {
  int n = 0;
  Nba sys;  // self-composition, arity n
  Nba phi;  // T-equivalent automaton of the suffix, arity n
};
InclusionInstance build_inclusion_instance(const TransitionSystem& t, const HyperFormula& f,
                                           const Limits& limits = {});

}  // namespace hymc
