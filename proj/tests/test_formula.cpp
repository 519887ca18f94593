#include <doctest.h>

#include <functional>

#include "hymc/bench.hpp"
#include "hymc/formula.hpp"
#include "support.hpp"

using namespace hymc;

TEST_CASE("parse: prefix and body") {
  HyperFormula f = parse_hyperltl("forall p1. exists p2. G (a_p1 <-> a_p2)");
  REQUIRE(f.prefix.size() == 2);
  CHECK(f.prefix[0] == std::make_pair(Quantifier::Forall, std::string("p1")));
  CHECK(f.prefix[1] == std::make_pair(Quantifier::Exists, std::string("p2")));
  CHECK(f.body->op == LtlOp::Globally);
  CHECK(f.alternations() == 1);
}

TEST_CASE("parse: unbound trace variable") {
  CHECK_THROWS_AS(parse_hyperltl("forall p. X (h_p & l_q)"), ParseError);
  try {
    parse_hyperltl("forall p. X (h_p)\n& l_q");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("unbound") != std::string::npos);
  }
}

TEST_CASE("parse: duplicate prefix variable") {
  CHECK_THROWS_AS(parse_hyperltl("forall p. exists p. a_p"), ParseError);
}

TEST_CASE("parse: syntax error carries position") {
  try {
    parse_hyperltl("forall p. G (a_p &");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
  }
}

TEST_CASE("parse: GNI template shape") {
  HyperFormula f = parse_hyperltl(
      "forall p1. forall p2. exists p3. "
      "(G (h_p1 <-> h_p3)) & (G ((l_p2 <-> l_p3) & (o_p2 <-> o_p3)))");
  REQUIRE(f.prefix.size() == 3);
  CHECK(f.prefix[0].first == Quantifier::Forall);
  CHECK(f.prefix[1].first == Quantifier::Forall);
  CHECK(f.prefix[2].first == Quantifier::Exists);
  CHECK(f.alternations() == 1);
  // same shape as the built-in template
  HyperFormula g = bench::gni_formula({"h"}, {"l"}, {"o"});
  CHECK(equal(f, g));
}

TEST_CASE("parse: precedence and associativity") {
  // unary > U > & > |
  CHECK(to_string(parse_ltl_body("!a_p U b_p & c_p | d_p", {"p"})) ==
        to_string(ltl::make_or(
            ltl::make_and(ltl::until(ltl::make_not(ltl::atom("a", "p")), ltl::atom("b", "p")),
                          ltl::atom("c", "p")),
            ltl::atom("d", "p"))));
  // U right-associative
  CHECK(to_string(parse_ltl_body("a_p U b_p U c_p", {"p"})) ==
        to_string(ltl::until(ltl::atom("a", "p"),
                             ltl::until(ltl::atom("b", "p"), ltl::atom("c", "p")))));
}

TEST_CASE("parse: W desugars to (U) | G") {
  LtlRef w = parse_ltl_body("a_p W b_p", {"p"});
  LtlRef ref = ltl::make_or(ltl::until(ltl::atom("a", "p"), ltl::atom("b", "p")),
                            ltl::globally(ltl::atom("a", "p")));
  CHECK(equal(w, ref));
}

TEST_CASE("to_nnf: dualities") {
  LtlRef a = ltl::atom("a", "p"), b = ltl::atom("b", "p");
  CHECK(equal(to_nnf(ltl::make_not(ltl::until(a, b))),
              ltl::release(ltl::make_not(a), ltl::make_not(b))));
  CHECK(equal(to_nnf(ltl::make_not(ltl::make_not(a))), a));
  CHECK(equal(to_nnf(ltl::make_not(ltl::next(a))), ltl::next(ltl::make_not(a))));
}

TEST_CASE("to_nnf: negations only on atoms, no derived operators") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    LtlRef body = bench::gen_ltl_body(1 + seed % 9, 2, {"p", "q"}, seed);
    LtlRef n = to_nnf(ltl::make_not(body));
    std::function<void(const LtlRef&)> walk = [&](const LtlRef& f) {
      CHECK(f->op != LtlOp::Eventually);
      CHECK(f->op != LtlOp::Globally);
      if (f->op == LtlOp::Not) CHECK(f->left->op == LtlOp::Atom);
      if (f->left) walk(f->left);
      if (f->right) walk(f->right);
    };
    walk(n);
  }
}

TEST_CASE("negate: dual prefix, wrapped body") {
  HyperFormula f = parse_hyperltl("exists p. forall q. a_p U b_q");
  HyperFormula g = negate(f);
  CHECK(g.prefix[0].first == Quantifier::Forall);
  CHECK(g.prefix[1].first == Quantifier::Exists);
  CHECK(g.body->op == LtlOp::Not);
  CHECK(equal(g.body->left, f.body));
  CHECK(g.alternations() == f.alternations());
}

TEST_CASE("print/parse round-trip on random formulas") {
  for (uint64_t seed = 0; seed < 500; ++seed) {
    HyperFormula f = bench::gen_formula(seed % 2 ? "ae" : "eaa", 1 + seed % 12, 2, seed);
    HyperFormula g = parse_hyperltl(to_string(f));
    CHECK(equal(f, g));
  }
}

TEST_CASE("to_nnf preserves lasso-word satisfaction") {
  std::vector<std::string> vars{"p", "q"};
  int checked = 0;
  for (uint64_t seed = 0; seed < 1100; ++seed) {
    LtlRef body = bench::gen_ltl_body(1 + seed % 10, 2, vars, seed);
    auto asg = testsup::random_assignment(vars, 2, 3, 3, seed * 7 + 1);
    CHECK(oracle::eval(body, asg) == oracle::eval(to_nnf(body), asg));
    ++checked;
  }
  CHECK(checked >= 1000);
}
