#include "hymc/boolprog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace hymc {

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct PTok {
  std::string text;  // identifier/keyword or single punctuation; ":=" as one token
  int line, col;
  bool eof = false;
};

class PLexer {
 public:
  explicit PLexer(const std::string& s) : s_(s) { advance(); }
  const PTok& peek() const { return cur_; }
  PTok take() {
    PTok t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    cur_ = PTok{"", line_, col_, pos_ >= s_.size()};
    if (cur_.eof) return;
    char c = s_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        bump();
      cur_.text = s_.substr(start, pos_ - start);
      return;
    }
    if (c == ':' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
      bump();
      bump();
      cur_.text = ":=";
      return;
    }
    bump();
    cur_.text = std::string(1, c);
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
  PTok cur_;
};

ExprRef mk_expr(BoolExpr::Kind k, ExprRef l = nullptr, ExprRef r = nullptr) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = k;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

class ProgParser {
 public:
  explicit ProgParser(const std::string& text) : lex_(text) {}

  BoolProgram parse() {
    // Declarations first, then statements.
    while (!lex_.peek().eof) {
      const std::string& w = lex_.peek().text;
      if (w == "var") {
        lex_.take();
        do {
          PTok v = ident("variable name");
          declare(v);
        } while (accept(","));
        expect(";");
      } else if (w == "observe") {
        lex_.take();
        PTok v = ident("variable name");
        int idx = lookup(v);
        PTok as = lex_.take();
        if (as.text != "as") throw ParseError("expected 'as'", as.line, as.col);
        PTok ap = ident("AP name");
        for (const auto& [ov, oap] : prog_.observes) {
          (void)ov;
          if (oap == ap.text)
            throw ParseError("duplicate observed AP: " + ap.text, ap.line, ap.col);
        }
        prog_.observes.emplace_back(idx, ap.text);
        expect(";");
      } else {
        break;
      }
    }
    prog_.stmts = parse_stmts(false);
    PTok t = lex_.peek();
    if (!t.eof) throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    return prog_;
  }

 private:
  static bool is_keyword(const std::string& s) {
    return s == "var" || s == "observe" || s == "as" || s == "if" || s == "else" ||
           s == "while" || s == "input" || s == "true" || s == "false";
  }

  PTok ident(const char* what) {
    PTok t = lex_.take();
    if (t.eof || t.text.empty() ||
        !(std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_'))
      throw ParseError(std::string("expected ") + what, t.line, t.col);
    if (is_keyword(t.text))
      throw ParseError("reserved word used as " + std::string(what) + ": " + t.text,
                       t.line, t.col);
    return t;
  }

  void declare(const PTok& v) {
    if (std::find(prog_.vars.begin(), prog_.vars.end(), v.text) != prog_.vars.end())
      throw ParseError("duplicate variable: " + v.text, v.line, v.col);
    prog_.vars.push_back(v.text);
  }

  int lookup(const PTok& v) {
    auto it = std::find(prog_.vars.begin(), prog_.vars.end(), v.text);
    if (it == prog_.vars.end())
      throw ParseError("undeclared variable: " + v.text, v.line, v.col);
    return static_cast<int>(it - prog_.vars.begin());
  }

  bool accept(const std::string& s) {
    if (!lex_.peek().eof && lex_.peek().text == s) {
      lex_.take();
      return true;
    }
    return false;
  }

  void expect(const std::string& s) {
    PTok t = lex_.take();
    if (t.eof || t.text != s)
      throw ParseError("expected '" + s + "'", t.line, t.col);
  }

  std::vector<BoolStmt> parse_stmts(bool braced) {
    std::vector<BoolStmt> out;
    while (!lex_.peek().eof && !(braced && lex_.peek().text == "}"))
      out.push_back(parse_stmt());
    return out;
  }

  std::vector<BoolStmt> parse_block() {
    expect("{");
    auto b = parse_stmts(true);
    expect("}");
    return b;
  }

  BoolStmt parse_stmt() {
    PTok t = lex_.peek();
    BoolStmt s;
    if (t.text == "if") {
      lex_.take();
      expect("(");
      s.kind = BoolStmt::Kind::If;
      s.expr = parse_expr();
      expect(")");
      s.then_branch = parse_block();
      if (accept("else")) s.else_branch = parse_block();
      return s;
    }
    if (t.text == "while") {
      lex_.take();
      expect("(");
      s.kind = BoolStmt::Kind::While;
      s.expr = parse_expr();
      expect(")");
      s.body = parse_block();
      return s;
    }
    PTok v = ident("variable name");
    s.var = lookup(v);
    expect(":=");
    if (!lex_.peek().eof && lex_.peek().text == "input") {
      lex_.take();
      expect("(");
      expect(")");
      s.kind = BoolStmt::Kind::Input;
    } else {
      s.kind = BoolStmt::Kind::Assign;
      s.expr = parse_expr();
    }
    expect(";");
    return s;
  }

  // Precedence: ! > & > ^ > |
  ExprRef parse_expr() { return parse_or(); }

  ExprRef parse_or() {
    ExprRef l = parse_xor();
    while (accept("|")) l = mk_expr(BoolExpr::Kind::Or, l, parse_xor());
    return l;
  }

  ExprRef parse_xor() {
    ExprRef l = parse_and();
    while (accept("^")) l = mk_expr(BoolExpr::Kind::Xor, l, parse_and());
    return l;
  }

  ExprRef parse_and() {
    ExprRef l = parse_unary();
    while (accept("&")) l = mk_expr(BoolExpr::Kind::And, l, parse_unary());
    return l;
  }

  ExprRef parse_unary() {
    if (accept("!")) return mk_expr(BoolExpr::Kind::Not, parse_unary());
    if (accept("(")) {
      ExprRef e = parse_expr();
      expect(")");
      return e;
    }
    PTok t = lex_.peek();
    if (t.text == "true" || t.text == "false") {
      lex_.take();
      auto e = std::make_shared<BoolExpr>();
      e->kind = BoolExpr::Kind::Const;
      e->value = t.text == "true";
      return e;
    }
    PTok v = ident("variable or constant");
    auto e = std::make_shared<BoolExpr>();
    e->kind = BoolExpr::Kind::Var;
    e->var = lookup(v);
    return e;
  }

  PLexer lex_;
  BoolProgram prog_;
};

}  // namespace

BoolProgram parse_boolprog(const std::string& text) {
  return ProgParser(text).parse();
}

// ---------------------------------------------------------------------------
// Explosion
// ---------------------------------------------------------------------------

namespace {

struct Simple {
  int var;
  ExprRef expr;  // null = nondeterministic input
};

struct Term {
  enum class Kind : uint8_t { Goto, Cond, Halt } kind = Kind::Halt;
  ExprRef cond;
  int target = -1, target_else = -1;
};

struct CfgNode {
  std::vector<Simple> stmts;
  Term term;
};

class CfgBuilder {
 public:
  explicit CfgBuilder(const BoolProgram& p) {
    int entry = fresh();
    int end = compile_seq(p.stmts, entry);
    nodes_[end].term = Term{Term::Kind::Halt, nullptr, -1, -1};
    entry_ = entry;
    fold_constants();
    entry_ = thread(entry_);
    retarget_all();
  }

  const std::vector<CfgNode>& nodes() const { return nodes_; }
  int entry() const { return entry_; }

 private:
  int fresh() {
    nodes_.emplace_back();
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Compiles a statement list starting in node `cur`; returns the node in
  // which control continues afterwards.
  int compile_seq(const std::vector<BoolStmt>& stmts, int cur) {
    for (const auto& s : stmts) {
      switch (s.kind) {
        case BoolStmt::Kind::Assign:
          nodes_[cur].stmts.push_back({s.var, s.expr});
          break;
        case BoolStmt::Kind::Input:
          nodes_[cur].stmts.push_back({s.var, nullptr});
          break;
        case BoolStmt::Kind::If: {
          int nt = fresh(), ne = fresh(), join = fresh();
          nodes_[cur].term = Term{Term::Kind::Cond, s.expr, nt, ne};
          int te = compile_seq(s.then_branch, nt);
          nodes_[te].term = Term{Term::Kind::Goto, nullptr, join, -1};
          int ee = compile_seq(s.else_branch, ne);
          nodes_[ee].term = Term{Term::Kind::Goto, nullptr, join, -1};
          cur = join;
          break;
        }
        case BoolStmt::Kind::While: {
          int guard = fresh(), body = fresh(), after = fresh();
          nodes_[cur].term = Term{Term::Kind::Goto, nullptr, guard, -1};
          nodes_[guard].term = Term{Term::Kind::Cond, s.expr, body, after};
          int be = compile_seq(s.body, body);
          nodes_[be].term = Term{Term::Kind::Goto, nullptr, guard, -1};
          cur = after;
          break;
        }
      }
    }
    return cur;
  }

  static bool const_value(const ExprRef& e, bool& out) {
    if (!e) return false;
    switch (e->kind) {
      case BoolExpr::Kind::Const: out = e->value; return true;
      case BoolExpr::Kind::Not: {
        bool v;
        if (const_value(e->lhs, v)) {
          out = !v;
          return true;
        }
        return false;
      }
      default: return false;
    }
  }

  void fold_constants() {
    for (auto& n : nodes_) {
      bool v;
      if (n.term.kind == Term::Kind::Cond && const_value(n.term.cond, v))
        n.term = Term{Term::Kind::Goto, nullptr, v ? n.term.target : n.term.target_else, -1};
    }
    // Halt = loop forever at a terminal point.
    bool any_halt = false;
    for (const auto& n : nodes_) any_halt |= n.term.kind == Term::Kind::Halt;
    if (!any_halt) return;
    terminal_ = fresh();  // invalidates references into nodes_
    nodes_[terminal_].term = Term{Term::Kind::Goto, nullptr, terminal_, -1};
    for (auto& n : nodes_)
      if (n.term.kind == Term::Kind::Halt)
        n.term = Term{Term::Kind::Goto, nullptr, terminal_, -1};
  }

  // Follows chains of empty goto-nodes. A cycle of empty nodes collapses to a
  // self-looping representative.
  int thread(int n) {
    std::set<int> seen;
    while (nodes_[n].stmts.empty() && nodes_[n].term.kind == Term::Kind::Goto &&
           nodes_[n].term.target != n) {
      if (!seen.insert(n).second) {
        nodes_[n].term.target = n;
        return n;
      }
      n = nodes_[n].term.target;
    }
    return n;
  }

  void retarget_all() {
    for (auto& n : nodes_) {
      if (n.term.kind == Term::Kind::Goto) {
        n.term.target = thread(n.term.target);
      } else if (n.term.kind == Term::Kind::Cond) {
        n.term.target = thread(n.term.target);
        n.term.target_else = thread(n.term.target_else);
      }
    }
  }

  std::vector<CfgNode> nodes_;
  int entry_ = 0;
  int terminal_ = -1;
};

uint64_t eval_expr(const ExprRef& e, const std::vector<uint64_t>& val, uint64_t ones) {
  switch (e->kind) {
    case BoolExpr::Kind::Var: return val[e->var];
    case BoolExpr::Kind::Const: return e->value ? ones : 0;
    case BoolExpr::Kind::Not: return ~eval_expr(e->lhs, val, ones) & ones;
    case BoolExpr::Kind::And: return eval_expr(e->lhs, val, ones) & eval_expr(e->rhs, val, ones);
    case BoolExpr::Kind::Or: return eval_expr(e->lhs, val, ones) | eval_expr(e->rhs, val, ones);
    case BoolExpr::Kind::Xor: return eval_expr(e->lhs, val, ones) ^ eval_expr(e->rhs, val, ones);
  }
  throw std::logic_error("eval_expr: bad kind");
}

}  // namespace

TransitionSystem explode_program(const BoolProgram& p, int bitwidth, size_t state_cap) {
  if (bitwidth < 1 || bitwidth > 62)
    throw ValidationError("bitwidth must be between 1 and 62");
  CfgBuilder cfg(p);
  const uint64_t ones = (1ull << bitwidth) - 1;

  using State = std::pair<int, std::vector<uint64_t>>;  // (node, valuation)
  std::map<State, uint32_t> ids;
  std::vector<State> states;
  auto intern = [&](State s) -> uint32_t {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    if (states.size() >= state_cap)
      throw ResourceLimitError("explosion too large: state cap " +
                               std::to_string(state_cap) + " exceeded");
    uint32_t id = static_cast<uint32_t>(states.size());
    ids.emplace(s, id);
    states.push_back(std::move(s));
    return id;
  };

  State init{cfg.entry(), std::vector<uint64_t>(p.vars.size(), 0)};
  intern(init);

  TransitionSystem t;
  for (const auto& [v, ap] : p.observes) {
    (void)v;
    t.aps.push_back(ap);
  }
  t.initial.push_back(0);

  // One transition executes all statements of a basic block; input reads
  // branch over every value, enumerated in increasing order for determinism.
  for (uint32_t cur = 0; cur < states.size(); ++cur) {
    const auto [node, val0] = states[cur];
    const CfgNode& n = cfg.nodes()[node];

    std::vector<std::vector<uint64_t>> vals{val0};
    for (const auto& st : n.stmts) {
      if (st.expr) {
        for (auto& v : vals) v[st.var] = eval_expr(st.expr, v, ones);
      } else {
        std::vector<std::vector<uint64_t>> next;
        next.reserve(vals.size() << bitwidth);
        for (const auto& v : vals)
          for (uint64_t x = 0; x <= ones; ++x) {
            next.push_back(v);
            next.back()[st.var] = x;
          }
        vals = std::move(next);
        if (vals.size() > state_cap)
          throw ResourceLimitError("explosion too large: input branching exceeds cap");
      }
    }

    std::set<uint32_t> dsts;
    for (auto& v : vals) {
      int target;
      if (n.term.kind == Term::Kind::Goto) {
        target = n.term.target;
      } else {
        target = eval_expr(n.term.cond, v, ones) != 0 ? n.term.target : n.term.target_else;
      }
      dsts.insert(intern(State{target, std::move(v)}));
    }
    t.succ.emplace_back(dsts.begin(), dsts.end());
    // label of the source state
    uint64_t mask = 0;
    for (size_t j = 0; j < p.observes.size(); ++j)
      if (val0[p.observes[j].first] != 0) mask |= 1ull << j;
    t.label.push_back(mask);
  }

  validate(t);
  return t;
}

}  // namespace hymc
