#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hymc/system.hpp"

namespace hymc {

/// Bitvector expression over declared program variables. At bitwidth w all
/// operators act bitwise; `true` is the all-ones word, `false` all zeros.
struct BoolExpr {
  enum class Kind : uint8_t { Var, Const, Not, And, Or, Xor };
  Kind kind;
  int var = -1;        // Var
  bool value = false;  // Const
  std::shared_ptr<const BoolExpr> lhs, rhs;
};
using ExprRef = std::shared_ptr<const BoolExpr>;

struct BoolStmt {
  enum class Kind : uint8_t { Assign, Input, If, While };
  Kind kind;
  int var = -1;   // Assign / Input target
  ExprRef expr;   // Assign rhs / If / While condition
  std::vector<BoolStmt> then_branch, else_branch;  // If
  std::vector<BoolStmt> body;                      // While
};

/// Minimal boolean program: variable declarations, observable-output
/// designations, and a statement list (grammar in docs/formats.md).
struct BoolProgram {
  std::vector<std::string> vars;
  std::vector<std::pair<int, std::string>> observes;  // var -> AP name
  std::vector<BoolStmt> stmts;
};

BoolProgram parse_boolprog(const std::string& text);

/// Explodes the program at the given bitwidth into an explicit transition
/// system. One transition executes one basic block; conditions test for a
/// nonzero value; a terminal program point self-loops. A state is labeled
/// with an observed AP iff the observed variable is nonzero. Throws
/// ResourceLimitError when the reachable state count exceeds the cap.
TransitionSystem explode_program(const BoolProgram& p, int bitwidth,
                                 size_t state_cap = 1000000);

}  // namespace hymc
