#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hymc/common.hpp"

namespace hymc {

enum class LtlOp : uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Next,
  Until,
  Release,
  Eventually,
  Globally,
};

struct LtlBody;
using LtlRef = std::shared_ptr<const LtlBody>;

/// Immutable quantifier-free LTL node over trace-indexed atomic propositions.
/// Derived operators (F, G, or) are kept in the tree; to_nnf desugars them.
struct LtlBody {
  LtlOp op;
  std::string prop;   // Atom only
  std::string trace;  // Atom only
  LtlRef left;        // unary child / binary lhs
  LtlRef right;       // binary rhs

  bool is_leaf() const { return op == LtlOp::True || op == LtlOp::False || op == LtlOp::Atom; }
};

namespace ltl {
LtlRef tt();
LtlRef ff();
LtlRef atom(std::string prop, std::string trace);
LtlRef make_not(LtlRef x);
LtlRef make_and(LtlRef a, LtlRef b);
LtlRef make_or(LtlRef a, LtlRef b);
LtlRef next(LtlRef x);
LtlRef until(LtlRef a, LtlRef b);
LtlRef release(LtlRef a, LtlRef b);
LtlRef eventually(LtlRef x);
LtlRef globally(LtlRef x);
}  // namespace ltl

enum class Quantifier : uint8_t { Forall, Exists };

/// Closed HyperLTL formula: quantifier prefix over trace variables plus body.
struct HyperFormula {
  std::vector<std::pair<Quantifier, std::string>> prefix;
  LtlRef body;

  /// Number of adjacent prefix pairs with differing quantifier.
  int alternations() const;
};

/// Structural equality of bodies / formulas.
bool equal(const LtlRef& a, const LtlRef& b);
bool equal(const HyperFormula& a, const HyperFormula& b);

/// Node count (AST size).
int body_size(const LtlRef& b);

/// Trace variables occurring free in the body, in first-occurrence order.
std::vector<std::string> free_traces(const LtlRef& b);

/// Checks prefix distinctness and closedness; throws ValidationError.
void validate(const HyperFormula& f);

/// Parses the concrete syntax (see docs/formats.md). Throws ParseError with
/// line/column on syntax errors, unbound trace variables, duplicate prefix
/// variables. W, -> and <-> are desugared during parsing.
HyperFormula parse_hyperltl(const std::string& text);

/// Parses just a body, closed w.r.t. the given trace variables.
LtlRef parse_ltl_body(const std::string& text, const std::vector<std::string>& traces);

std::string to_string(const LtlRef& b);
std::string to_string(const HyperFormula& f);

/// Negation normal form: negations pushed to atoms, F/G desugared into U/R.
/// Output uses only {atom, !atom, true, false, &, |, X, U, R}.
LtlRef to_nnf(const LtlRef& b);

/// Dual prefix, negated body: T |= negate(f) iff not T |= f.
HyperFormula negate(const HyperFormula& f);

}  // namespace hymc
