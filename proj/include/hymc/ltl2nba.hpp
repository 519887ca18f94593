#pragma once

#include "hymc/formula.hpp"
#include "hymc/nba.hpp"

namespace hymc {

/// Tableau LTL-to-NBA translation. `body` must be in NNF (apply to_nnf) and
/// closed w.r.t. `var_order`; trace variable var_order[i] maps to trace index
/// i of the product alphabet. `aps` fixes the AP universe (propositions used
/// by the body must occur in it). States are obligation sets unfolded against
/// symbolic letters; until-obligations yield a generalized acceptance that is
/// degeneralized with a counter.
Nba ltl_to_nba(const LtlRef& body, const std::vector<std::string>& var_order,
               const std::vector<std::string>& aps, const Limits& limits = {});

}  // namespace hymc
