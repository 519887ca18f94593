#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hymc/common.hpp"

namespace hymc {

/// Finite Kripke-style transition system. States are dense 0..n-1, labels are
/// AP bitmasks over the declared `aps` list (at most 64 propositions).
struct TransitionSystem {
  std::vector<std::string> aps;
  std::vector<uint32_t> initial;
  std::vector<uint64_t> label;             // per state
  std::vector<std::vector<uint32_t>> succ; // per state, sorted

  size_t num_states() const { return succ.size(); }
  int ap_index(const std::string& name) const;
};

/// Checks nonempty initial set, totality, label and edge ranges.
void validate(const TransitionSystem& t);

/// Parses the explicit-state format (see docs/formats.md). State ids in the
/// file may be arbitrary nonnegative integers; they are mapped to dense ids
/// in declaration order.
TransitionSystem parse_system(const std::string& text);

/// Inverse of parse_system up to state renaming.
std::string print_system(const TransitionSystem& t);

}  // namespace hymc
