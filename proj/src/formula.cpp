#include "hymc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace hymc {

namespace ltl {

static LtlRef node(LtlOp op, LtlRef l = nullptr, LtlRef r = nullptr) {
  auto n = std::make_shared<LtlBody>();
  n->op = op;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

LtlRef tt() { return node(LtlOp::True); }
LtlRef ff() { return node(LtlOp::False); }
LtlRef atom(std::string prop, std::string trace) {
  auto n = std::make_shared<LtlBody>();
  n->op = LtlOp::Atom;
  n->prop = std::move(prop);
  n->trace = std::move(trace);
  return n;
}
LtlRef make_not(LtlRef x) { return node(LtlOp::Not, std::move(x)); }
LtlRef make_and(LtlRef a, LtlRef b) { return node(LtlOp::And, std::move(a), std::move(b)); }
LtlRef make_or(LtlRef a, LtlRef b) { return node(LtlOp::Or, std::move(a), std::move(b)); }
LtlRef next(LtlRef x) { return node(LtlOp::Next, std::move(x)); }
LtlRef until(LtlRef a, LtlRef b) { return node(LtlOp::Until, std::move(a), std::move(b)); }
LtlRef release(LtlRef a, LtlRef b) { return node(LtlOp::Release, std::move(a), std::move(b)); }
LtlRef eventually(LtlRef x) { return node(LtlOp::Eventually, std::move(x)); }
LtlRef globally(LtlRef x) { return node(LtlOp::Globally, std::move(x)); }

}  // namespace ltl

int HyperFormula::alternations() const {
  int k = 0;
  for (size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i].first != prefix[i - 1].first) ++k;
  return k;
}

bool equal(const LtlRef& a, const LtlRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op) return false;
  if (a->op == LtlOp::Atom) return a->prop == b->prop && a->trace == b->trace;
  return equal(a->left, b->left) && equal(a->right, b->right);
}

bool equal(const HyperFormula& a, const HyperFormula& b) {
  return a.prefix == b.prefix && equal(a.body, b.body);
}

int body_size(const LtlRef& b) {
  if (!b) return 0;
  return 1 + body_size(b->left) + body_size(b->right);
}

static void collect_traces(const LtlRef& b, std::vector<std::string>& out, std::set<std::string>& seen) {
  if (!b) return;
  if (b->op == LtlOp::Atom) {
    if (seen.insert(b->trace).second) out.push_back(b->trace);
    return;
  }
  collect_traces(b->left, out, seen);
  collect_traces(b->right, out, seen);
}

std::vector<std::string> free_traces(const LtlRef& b) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_traces(b, out, seen);
  return out;
}

void validate(const HyperFormula& f) {
  std::set<std::string> bound;
  for (const auto& [q, v] : f.prefix) {
    (void)q;
    if (!bound.insert(v).second)
      throw ValidationError("duplicate trace variable in prefix: " + v);
  }
  for (const auto& v : free_traces(f.body))
    if (!bound.count(v)) throw ValidationError("unbound trace variable: " + v);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident,   // may contain '_' (atoms are split at the last one)
  Not,     // !
  LParen,
  RParen,
  Dot,
  OpAnd,   // &
  OpOr,    // |
  OpImp,   // ->
  OpIff,   // <->
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= s_.size()) {
      cur_.kind = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = s_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        bump();
      cur_.kind = Tok::Ident;
      cur_.text = s_.substr(start, pos_ - start);
      return;
    }
    switch (c) {
      case '!': bump(); cur_.kind = Tok::Not; return;
      case '(': bump(); cur_.kind = Tok::LParen; return;
      case ')': bump(); cur_.kind = Tok::RParen; return;
      case '.': bump(); cur_.kind = Tok::Dot; return;
      case '&': bump(); cur_.kind = Tok::OpAnd; return;
      case '|': bump(); cur_.kind = Tok::OpOr; return;
      case '-':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
          bump(); bump();
          cur_.kind = Tok::OpImp;
          return;
        }
        throw ParseError("unexpected character '-'", line_, col_);
      case '<':
        if (pos_ + 2 < s_.size() && s_[pos_ + 1] == '-' && s_[pos_ + 2] == '>') {
          bump(); bump(); bump();
          cur_.kind = Tok::OpIff;
          return;
        }
        throw ParseError("unexpected character '<'", line_, col_);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {  // line comment
        while (pos_ < s_.size() && s_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_{};
};

class Parser {
 public:
  Parser(const std::string& text, std::vector<std::string> traces, bool body_only)
      : lex_(text), traces_(std::move(traces)), body_only_(body_only) {}

  HyperFormula parse() {
    HyperFormula f;
    if (!body_only_) {
      while (lex_.peek().kind == Tok::Ident &&
             (lex_.peek().text == "forall" || lex_.peek().text == "exists")) {
        Token q = lex_.take();
        Token v = expect_ident("trace variable");
        if (v.text.find('_') != std::string::npos)
          throw ParseError("trace variable must not contain '_': " + v.text, v.line, v.col);
        if (is_keyword(v.text))
          throw ParseError("reserved word used as trace variable: " + v.text, v.line, v.col);
        for (const auto& [pq, pv] : f.prefix) {
          (void)pq;
          if (pv == v.text)
            throw ParseError("duplicate trace variable in prefix: " + v.text, v.line, v.col);
        }
        expect(Tok::Dot, "'.'");
        f.prefix.emplace_back(q.text == "forall" ? Quantifier::Forall : Quantifier::Exists,
                              v.text);
        traces_.push_back(v.text);
      }
    }
    f.body = parse_iff();
    Token t = lex_.peek();
    if (t.kind != Tok::End)
      throw ParseError("trailing input after formula", t.line, t.col);
    return f;
  }

 private:
  static bool is_keyword(const std::string& s) {
    return s == "forall" || s == "exists" || s == "true" || s == "false" || s == "X" ||
           s == "G" || s == "F" || s == "U" || s == "R" || s == "W";
  }

  Token expect_ident(const char* what) {
    Token t = lex_.take();
    if (t.kind != Tok::Ident)
      throw ParseError(std::string("expected ") + what, t.line, t.col);
    return t;
  }

  void expect(Tok k, const char* what) {
    Token t = lex_.take();
    if (t.kind != k) throw ParseError(std::string("expected ") + what, t.line, t.col);
  }

  // <-> (lowest), right-associative
  LtlRef parse_iff() {
    LtlRef l = parse_imp();
    if (lex_.peek().kind == Tok::OpIff) {
      lex_.take();
      LtlRef r = parse_iff();
      // a <-> b  ==  (a -> b) & (b -> a)
      return ltl::make_and(ltl::make_or(ltl::make_not(l), r),
                           ltl::make_or(ltl::make_not(r), l));
    }
    return l;
  }

  // ->, right-associative
  LtlRef parse_imp() {
    LtlRef l = parse_or();
    if (lex_.peek().kind == Tok::OpImp) {
      lex_.take();
      LtlRef r = parse_imp();
      return ltl::make_or(ltl::make_not(l), r);
    }
    return l;
  }

  LtlRef parse_or() {
    LtlRef l = parse_and();
    while (lex_.peek().kind == Tok::OpOr) {
      lex_.take();
      l = ltl::make_or(l, parse_and());
    }
    return l;
  }

  LtlRef parse_and() {
    LtlRef l = parse_until();
    while (lex_.peek().kind == Tok::OpAnd) {
      lex_.take();
      l = ltl::make_and(l, parse_until());
    }
    return l;
  }

  // U, R, W share one level, right-associative.
  LtlRef parse_until() {
    LtlRef l = parse_unary();
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && (t.text == "U" || t.text == "R" || t.text == "W")) {
      std::string op = lex_.take().text;
      LtlRef r = parse_until();
      if (op == "U") return ltl::until(l, r);
      if (op == "R") return ltl::release(l, r);
      // a W b  ==  (a U b) | G a
      return ltl::make_or(ltl::until(l, r), ltl::globally(l));
    }
    return l;
  }

  LtlRef parse_unary() {
    Token t = lex_.peek();
    if (t.kind == Tok::Not) {
      lex_.take();
      return ltl::make_not(parse_unary());
    }
    if (t.kind == Tok::Ident && (t.text == "X" || t.text == "G" || t.text == "F")) {
      lex_.take();
      LtlRef sub = parse_unary();
      if (t.text == "X") return ltl::next(sub);
      if (t.text == "G") return ltl::globally(sub);
      return ltl::eventually(sub);
    }
    return parse_primary();
  }

  LtlRef parse_primary() {
    Token t = lex_.take();
    if (t.kind == Tok::LParen) {
      LtlRef b = parse_iff();
      expect(Tok::RParen, "')'");
      return b;
    }
    if (t.kind != Tok::Ident)
      throw ParseError("expected atom, constant or '('", t.line, t.col);
    if (t.text == "true") return ltl::tt();
    if (t.text == "false") return ltl::ff();
    size_t us = t.text.rfind('_');
    if (us == std::string::npos || us == 0 || us + 1 == t.text.size())
      throw ParseError("expected atom of the form name_tracevar, got '" + t.text + "'",
                       t.line, t.col);
    std::string prop = t.text.substr(0, us);
    std::string var = t.text.substr(us + 1);
    if (std::find(traces_.begin(), traces_.end(), var) == traces_.end())
      throw ParseError("unbound trace variable: " + var, t.line, t.col);
    return ltl::atom(prop, var);
  }

  Lexer lex_;
  std::vector<std::string> traces_;
  bool body_only_;
};

}  // namespace

HyperFormula parse_hyperltl(const std::string& text) {
  Parser p(text, {}, false);
  HyperFormula f = p.parse();
  validate(f);
  return f;
}

LtlRef parse_ltl_body(const std::string& text, const std::vector<std::string>& traces) {
  Parser p(text, traces, true);
  return p.parse().body;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Binding strength: unary (4) > U/R (3) > & (2) > | (1).
int prec_of(LtlOp op) {
  switch (op) {
    case LtlOp::Or: return 1;
    case LtlOp::And: return 2;
    case LtlOp::Until:
    case LtlOp::Release: return 3;
    default: return 4;
  }
}

void print_body(const LtlRef& b, std::ostringstream& os, int parent_prec) {
  int prec = prec_of(b->op);
  bool paren = prec < parent_prec;
  // Mixed U/R chains are always parenthesized to keep the output unambiguous.
  if (!paren && prec == 3 && parent_prec == 3) paren = true;
  if (paren) os << '(';
  switch (b->op) {
    case LtlOp::True: os << "true"; break;
    case LtlOp::False: os << "false"; break;
    case LtlOp::Atom: os << b->prop << '_' << b->trace; break;
    case LtlOp::Not:
      os << '!';
      print_body(b->left, os, 4);
      break;
    case LtlOp::Next:
      os << "X ";
      print_body(b->left, os, 4);
      break;
    case LtlOp::Globally:
      os << "G ";
      print_body(b->left, os, 4);
      break;
    case LtlOp::Eventually:
      os << "F ";
      print_body(b->left, os, 4);
      break;
    case LtlOp::And:
      print_body(b->left, os, 2);
      os << " & ";
      print_body(b->right, os, 3);
      break;
    case LtlOp::Or:
      print_body(b->left, os, 1);
      os << " | ";
      print_body(b->right, os, 2);
      break;
    case LtlOp::Until:
      print_body(b->left, os, 4);
      os << " U ";
      print_body(b->right, os, 3);
      break;
    case LtlOp::Release:
      print_body(b->left, os, 4);
      os << " R ";
      print_body(b->right, os, 3);
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string to_string(const LtlRef& b) {
  std::ostringstream os;
  print_body(b, os, 0);
  return os.str();
}

std::string to_string(const HyperFormula& f) {
  std::ostringstream os;
  for (const auto& [q, v] : f.prefix)
    os << (q == Quantifier::Forall ? "forall " : "exists ") << v << ". ";
  os << to_string(f.body);
  return os.str();
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

namespace {

LtlRef nnf_pos(const LtlRef& b);
LtlRef nnf_neg(const LtlRef& b);

LtlRef nnf_pos(const LtlRef& b) {
  switch (b->op) {
    case LtlOp::True:
    case LtlOp::False:
    case LtlOp::Atom: return b;
    case LtlOp::Not: return nnf_neg(b->left);
    case LtlOp::And: return ltl::make_and(nnf_pos(b->left), nnf_pos(b->right));
    case LtlOp::Or: return ltl::make_or(nnf_pos(b->left), nnf_pos(b->right));
    case LtlOp::Next: return ltl::next(nnf_pos(b->left));
    case LtlOp::Until: return ltl::until(nnf_pos(b->left), nnf_pos(b->right));
    case LtlOp::Release: return ltl::release(nnf_pos(b->left), nnf_pos(b->right));
    case LtlOp::Eventually: return ltl::until(ltl::tt(), nnf_pos(b->left));
    case LtlOp::Globally: return ltl::release(ltl::ff(), nnf_pos(b->left));
  }
  throw std::logic_error("nnf_pos: bad op");
}

LtlRef nnf_neg(const LtlRef& b) {
  switch (b->op) {
    case LtlOp::True: return ltl::ff();
    case LtlOp::False: return ltl::tt();
    case LtlOp::Atom: return ltl::make_not(b);
    case LtlOp::Not: return nnf_pos(b->left);
    case LtlOp::And: return ltl::make_or(nnf_neg(b->left), nnf_neg(b->right));
    case LtlOp::Or: return ltl::make_and(nnf_neg(b->left), nnf_neg(b->right));
    case LtlOp::Next: return ltl::next(nnf_neg(b->left));
    case LtlOp::Until: return ltl::release(nnf_neg(b->left), nnf_neg(b->right));
    case LtlOp::Release: return ltl::until(nnf_neg(b->left), nnf_neg(b->right));
    case LtlOp::Eventually: return ltl::release(ltl::ff(), nnf_neg(b->left));
    case LtlOp::Globally: return ltl::until(ltl::tt(), nnf_neg(b->left));
  }
  throw std::logic_error("nnf_neg: bad op");
}

}  // namespace

LtlRef to_nnf(const LtlRef& b) { return nnf_pos(b); }

HyperFormula negate(const HyperFormula& f) {
  HyperFormula g;
  g.prefix.reserve(f.prefix.size());
  for (const auto& [q, v] : f.prefix)
    g.prefix.emplace_back(q == Quantifier::Forall ? Quantifier::Exists : Quantifier::Forall, v);
  g.body = ltl::make_not(f.body);
  return g;
}

}  // namespace hymc
