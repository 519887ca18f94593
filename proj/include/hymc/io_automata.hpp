#pragma once

#include "hymc/nba.hpp"

namespace hymc {

/// Maximum flat proposition count for explicit-alphabet (ba) export: the
/// letter space 2^(arity*|AP|) must stay enumerable.
constexpr int kMaxBaProps = 20;

/// Header-based textual format with symbolic DNF guards (see docs/formats.md).
std::string export_hoa_like(const Nba& a);
Nba import_hoa_like(const std::string& text);

/// Explicit-alphabet `letter,[src]->[dst]` format; the letter id is the
/// packed letter mask. Multiple initial states are folded into a fresh one.
/// Throws ResourceLimitError("alphabet too large") when arity*|AP| exceeds
/// kMaxBaProps.
std::string export_ba(const Nba& a);

/// Imports a ba file as an arity-1 automaton over synthetic propositions
/// b0..b{k-1}, k = bits needed for the largest letter id (at least
/// `min_bits` when positive). Letters keep their ids as packed masks.
Nba import_ba(const std::string& text, int min_bits = 0);

}  // namespace hymc
