#pragma once

#include "hymc/formula.hpp"
#include "hymc/nba.hpp"
#include "hymc/system.hpp"

namespace hymc::oracle {

/// Reference implementations used for testing. Nothing here shares automata
/// code with the main kernel: the decision procedure below runs on its own
/// explicit-alphabet representation.

/// Trace assignment mapping trace variables to ultimately periodic words,
/// normalized to a common stem/loop length.
struct LassoAssignment {
  std::vector<std::string> aps;
  std::vector<std::string> vars;
  std::vector<LassoWord> words;  // arity 1, all same stem/loop length

  size_t stem_len() const { return words.empty() ? 0 : words[0].stem.size(); }
  size_t loop_len() const { return words.empty() ? 1 : words[0].loop.size(); }
  const LassoWord& word_of(const std::string& var) const;

  /// Zip in variable order (pointwise product).
  LassoWord zipped() const { return zip_words(words); }
};

/// Normalizes the given per-variable words (stems padded by loop unrolling,
/// loops unrolled to the least common multiple). Preserves each omega-word.
LassoAssignment make_assignment(std::vector<std::string> aps,
                                std::vector<std::pair<std::string, LassoWord>> parts);

/// Position-indexed LTL satisfaction on ultimately periodic words, evaluated
/// exactly by memoizing positions up to stem + 2*loop (positions >= stem are
/// taken mod loop). Handles derived operators directly.
bool eval(const LtlRef& body, const LassoAssignment& asg, size_t pos = 0);

struct OracleBounds {
  size_t max_states = 8;
  size_t max_quantifiers = 3;
  int max_body_size = 10;
  int max_letter_bits = 12;  // 2^(arity*|AP|) <= 4096
};

/// Brute reference decision for T |= f: quantifier elimination re-implemented
/// over explicit-alphabet automata with an independently coded rank-tuple
/// complementation, no hygiene, no inclusion shortcut. Enforces the bounds
/// (OracleBoundsError beyond them).
bool decide_naive(const TransitionSystem& t, const HyperFormula& f,
                  const OracleBounds& bounds = {});

}  // namespace hymc::oracle
