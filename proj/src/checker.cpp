#include "hymc/checker.hpp"

#include <sstream>

#include "hymc/automata_ops.hpp"
#include "hymc/ltl2nba.hpp"

namespace hymc {

namespace {

struct Elim {
  Nba a;
  bool negated = false;  // a is T-equivalent to the negation of the suffix
  size_t complements = 0;
  std::vector<StageStat> stages;
};

// Eliminates prefix quantifiers innermost-first down to (excluding) index
// `until`, tracking polarity so that adjacent complementations cancel: the
// body is translated negated when the innermost quantifier is universal, and
// a complementation happens exactly at each quantifier alternation.
Elim eliminate_suffix(const TransitionSystem& t, const HyperFormula& f, size_t until,
                      const Limits& limits) {
  std::vector<std::string> vars;
  for (const auto& [q, v] : f.prefix) {
    (void)q;
    vars.push_back(v);
  }

  Elim e;
  e.negated = f.prefix.size() > until && f.prefix.back().first == Quantifier::Forall;
  LtlRef body0 = e.negated ? ltl::make_not(f.body) : f.body;
  {
    Stopwatch sw;
    e.a = ltl_to_nba(to_nnf(body0), vars, t.aps, limits);
    e.stages.push_back({"ltl2nba", e.a.num_states(), sw.elapsed_ms()});
  }
  for (size_t i = f.prefix.size(); i-- > until;) {
    Quantifier q = f.prefix[i].first;
    bool flip = q == Quantifier::Exists ? e.negated : !e.negated;
    if (flip) {
      Stopwatch sw;
      e.a = complement(e.a, limits);
      e.complements++;
      e.negated = !e.negated;
      e.stages.push_back({"complement", e.a.num_states(), sw.elapsed_ms()});
    }
    Stopwatch sw;
    e.a = exists_step(e.a, t, limits);
    e.stages.push_back({"exists_step", e.a.num_states(), sw.elapsed_ms()});
  }
  return e;
}

InclusionOutcome run_engine(const Engine& eng, const Nba& sys, const Nba& phi,
                            const Limits& limits) {
  switch (eng.kind) {
    case EngineKind::Complement: return include_complement(sys, phi, limits);
    case EngineKind::Antichain: return include_antichain(sys, phi, limits);
    case EngineKind::External: return include_external(sys, phi, eng.external_cmd, limits);
  }
  throw std::logic_error("run_engine: bad engine");
}

size_t leading_foralls(const HyperFormula& f) {
  size_t n = 0;
  while (n < f.prefix.size() && f.prefix[n].first == Quantifier::Forall) ++n;
  return n;
}

Verdict check_pure_abv(const TransitionSystem& t, const HyperFormula& f,
                       const CheckOptions& opts) {
  Verdict v;
  v.strategy_used = "pure-abv";
  v.alternations = f.alternations();
  Elim e = eliminate_suffix(t, f, 0, opts.limits);
  v.stages = std::move(e.stages);
  v.complement_count = e.complements;
  EmptinessResult r = emptiness(e.a);
  v.holds = e.negated ? r.empty : !r.empty;
  return v;
}

// f must be universal-leading (or quantifier-free, which degenerates to a
// 0-fold block and is handled by the caller).
Verdict check_inclusion_forall(const TransitionSystem& t, const HyperFormula& f,
                               const CheckOptions& opts) {
  size_t n = leading_foralls(f);
  Verdict v;
  v.strategy_used = "inclusion";
  v.inclusion_shortcut = true;
  v.alternations = f.alternations();

  Elim e = eliminate_suffix(t, f, n, opts.limits);
  v.stages = std::move(e.stages);
  v.complement_count = e.complements;
  if (e.negated) {
    Stopwatch sw;
    e.a = complement(e.a, opts.limits);
    v.complement_count++;
    v.stages.push_back({"complement", e.a.num_states(), sw.elapsed_ms()});
  }

  Nba sys;
  {
    Stopwatch sw;
    sys = self_composition(t, static_cast<int>(n), opts.limits);
    v.stages.push_back({"self_composition", sys.num_states(), sw.elapsed_ms()});
  }
  InclusionOutcome inc = run_engine(opts.engine, sys, e.a, opts.limits);
  v.engine_used = inc.stats.engine;
  v.stages.push_back({"inclusion", inc.stats.states_explored, inc.stats.elapsed_ms});
  v.holds = inc.included;
  if (!inc.included && inc.counterexample) {
    // defensive: the counterexample must be a zip of system traces
    if (!member(sys, *inc.counterexample))
      throw std::logic_error("inclusion counterexample is not a self-composition member");
    v.witness = std::move(inc.counterexample);
    v.witness_role = WitnessRole::UniversalCounterexample;
  }
  return v;
}

Verdict check_inclusion(const TransitionSystem& t, const HyperFormula& f,
                        const CheckOptions& opts) {
  if (leading_foralls(f) > 0) return check_inclusion_forall(t, f, opts);
  // existential-leading: check the negation and flip the verdict; a
  // counterexample of the negation witnesses the existential block.
  Verdict v = check_inclusion_forall(t, negate(f), opts);
  v.holds = !v.holds;
  if (v.witness) v.witness_role = WitnessRole::ExistentialWitness;
  return v;
}

}  // namespace

Verdict check(const TransitionSystem& t, const HyperFormula& f, const CheckOptions& opts) {
  validate(f);
  validate(t);
  Stopwatch sw;
  Verdict v;
  bool has_forall = false;
  for (const auto& [q, var] : f.prefix) {
    (void)var;
    has_forall |= q == Quantifier::Forall;
  }

  switch (opts.strategy) {
    case Strategy::PureAbv:
      v = check_pure_abv(t, f, opts);
      break;
    case Strategy::Inclusion:
      if (f.prefix.empty())
        v = check_pure_abv(t, f, opts);
      else
        v = check_inclusion(t, f, opts);
      break;
    case Strategy::Auto:
      // The inclusion path pays off exactly when a universal block can be
      // absorbed; a purely existential prefix gets the cheap emptiness route.
      if (has_forall)
        v = check_inclusion(t, f, opts);
      else
        v = check_pure_abv(t, f, opts);
      break;
  }
  v.total_ms = sw.elapsed_ms();
  return v;
}

std::pair<LassoWord, WitnessRole> extract_witness(const Verdict& v) {
  if (!v.witness || !v.witness_role)
    throw ValidationError("no witness available for this verdict shape");
  return {*v.witness, *v.witness_role};
}

std::string stats_report(const Verdict& v, bool csv) {
  std::ostringstream os;
  if (csv) {
    os << "stage,states,ms\n";
    for (const auto& s : v.stages) os << s.name << ',' << s.states << ',' << s.ms << "\n";
    os << "total,," << v.total_ms << "\n"
       << "complement_count,," << v.complement_count << "\n";
  } else {
    os << "strategy: " << v.strategy_used;
    if (!v.engine_used.empty()) os << " (engine " << v.engine_used << ")";
    os << "\n";
    for (const auto& s : v.stages)
      os << "  " << s.name << ": " << s.states << " states, " << s.ms << " ms\n";
    os << "  complementations: " << v.complement_count << " (alternations: " << v.alternations
       << ")\n";
    os << "  total: " << v.total_ms << " ms\n";
  }
  return os.str();
}

InclusionInstance build_inclusion_instance(const TransitionSystem& t, const HyperFormula& f,
                                           const Limits& limits) {
  validate(f);
  validate(t);
  size_t n = leading_foralls(f);
  if (n == 0) throw ValidationError("formula is not universal-leading");
  InclusionInstance inst;
  inst.n = static_cast<int>(n);
  Elim e = eliminate_suffix(t, f, n, limits);
  if (e.negated) e.a = complement(e.a, limits);
  inst.phi = std::move(e.a);
  inst.sys = self_composition(t, inst.n, limits);
  return inst;
}

}  // namespace hymc
