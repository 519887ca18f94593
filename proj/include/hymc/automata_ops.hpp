#pragma once

#include "hymc/nba.hpp"
#include "hymc/system.hpp"

namespace hymc {

/// Product step eliminating the last trace index (index n of an arity-(n+1)
/// automaton): the result guesses a trace of `t` for that index. States are
/// reachable (system state, automaton state) pairs; accepting iff the
/// automaton component is. Guards are partially evaluated at the guessed
/// state's label. Output is trimmed.
Nba exists_step(const Nba& a, const TransitionSystem& t, const Limits& limits = {});

/// Standard two-copy Buchi product; guards conjoined cube-wise. Equal arity
/// and alphabet required. Output is trimmed.
Nba intersect(const Nba& a, const Nba& b, const Limits& limits = {});

/// Automaton accepting exactly the zips of n traces of `t`: the n-fold
/// self-composition with labels moved onto edges and every state accepting.
Nba self_composition(const TransitionSystem& t, int n, const Limits& limits = {});

/// Rank-based complementation (level rankings with tightness restriction and
/// even-rank cut-point sets, ranks capped at 2(|Q|-|F|)). Output is trimmed.
/// Throws ResourceLimitError when the configured cap is exceeded.
Nba complement(const Nba& a, const Limits& limits = {});

}  // namespace hymc
