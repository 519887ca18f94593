#include "hymc/io_automata.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hymc {

// ---------------------------------------------------------------------------
// hoa-like
// ---------------------------------------------------------------------------

namespace {

std::string dnf_to_string(const Guard& g) {
  if (g.is_true()) return "t";
  std::string out;
  for (size_t i = 0; i < g.cubes.size(); ++i) {
    if (i) out += " | ";
    const Cube& c = g.cubes[i];
    out += "(";
    bool first = true;
    for (int b = 0; b < kMaxFlatProps; ++b) {
      if (c.pos >> b & 1) {
        if (!first) out += " & ";
        out += std::to_string(b);
        first = false;
      } else if (c.neg >> b & 1) {
        if (!first) out += " & ";
        out += "!" + std::to_string(b);
        first = false;
      }
    }
    if (first) out += "t";  // empty cube inside a larger DNF
    out += ")";
  }
  return out;
}

Guard dnf_parse(const std::string& s, int nprops, int lineno) {
  Guard g;
  size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto fail = [&](const std::string& msg) { throw ParseError("guard: " + msg, lineno, 1); };
  skip();
  if (pos < s.size() && s[pos] == 't' ) {
    ++pos;
    skip();
    if (pos != s.size()) fail("trailing input after 't'");
    return Guard::truth();
  }
  while (true) {
    skip();
    if (pos >= s.size() || s[pos] != '(') fail("expected '('");
    ++pos;
    Cube c;
    bool saw_t = false;
    while (true) {
      skip();
      if (pos < s.size() && s[pos] == 't') {
        ++pos;
        saw_t = true;
      } else {
        bool negated = false;
        if (pos < s.size() && s[pos] == '!') {
          negated = true;
          ++pos;
          skip();
        }
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected proposition index");
        int b = std::stoi(s.substr(start, pos - start));
        if (b < 0 || b >= nprops) fail("proposition index out of range");
        if (negated)
          c.neg |= 1ull << b;
        else
          c.pos |= 1ull << b;
      }
      skip();
      if (pos < s.size() && s[pos] == '&') {
        ++pos;
        continue;
      }
      break;
    }
    if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
    ++pos;
    (void)saw_t;
    if (!c.contradictory()) g.cubes.push_back(c);
    skip();
    if (pos < s.size() && s[pos] == '|') {
      ++pos;
      continue;
    }
    break;
  }
  if (pos != s.size()) throw ParseError("guard: trailing input", lineno, 1);
  g.normalize();
  return g;
}

}  // namespace

std::string export_hoa_like(const Nba& a) {
  std::ostringstream os;
  os << "HOA-ish: v1\n";
  os << "States: " << a.num_states() << "\n";
  os << "Start:";
  for (uint32_t q : a.initial) os << ' ' << q;
  os << "\n";
  os << "AP: " << a.flat_props();
  for (int i = 0; i < a.arity; ++i)
    for (const auto& ap : a.aps) os << " \"" << ap << '@' << i << '"';
  os << "\n--BODY--\n";
  for (uint32_t q = 0; q < a.num_states(); ++q) {
    os << "State: " << q << (a.accepting[q] ? " {acc}" : "") << "\n";
    for (const auto& e : a.edges[q]) os << '[' << dnf_to_string(e.guard) << "] " << e.dst << "\n";
  }
  os << "--END--\n";
  return os.str();
}

Nba import_hoa_like(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  Nba a;
  long nstates = -1;
  int nprops = -1;
  bool in_body = false;
  int cur_state = -1;
  std::vector<std::string> prop_names;

  auto fail = [&](const std::string& msg) { throw ParseError(msg, lineno, 1); };

  while (std::getline(is, line)) {
    ++lineno;
    // trim
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (!in_body) {
      if (line.rfind("HOA-ish:", 0) == 0) continue;
      if (line.rfind("States:", 0) == 0) {
        nstates = std::stol(line.substr(7));
        if (nstates < 0) fail("negative state count");
        for (long i = 0; i < nstates; ++i) a.add_state(false);
        continue;
      }
      if (line.rfind("Start:", 0) == 0) {
        std::istringstream ls(line.substr(6));
        long q;
        while (ls >> q) a.initial.push_back(static_cast<uint32_t>(q));
        continue;
      }
      if (line.rfind("AP:", 0) == 0) {
        std::istringstream ls(line.substr(3));
        ls >> nprops;
        if (nprops < 0 || nprops > kMaxFlatProps) fail("bad AP count");
        std::string rest;
        std::getline(ls, rest);
        size_t p = 0;
        while (true) {
          auto q1 = rest.find('"', p);
          if (q1 == std::string::npos) break;
          auto q2 = rest.find('"', q1 + 1);
          if (q2 == std::string::npos) fail("unterminated AP name");
          prop_names.push_back(rest.substr(q1 + 1, q2 - q1 - 1));
          p = q2 + 1;
        }
        if (static_cast<int>(prop_names.size()) != nprops)
          fail("AP count does not match names");
        continue;
      }
      if (line == "--BODY--") {
        in_body = true;
        continue;
      }
      fail("unrecognized header line: " + line);
    } else {
      if (line == "--END--") break;
      if (line.rfind("State:", 0) == 0) {
        std::istringstream ls(line.substr(6));
        long q;
        if (!(ls >> q) || q < 0 || q >= nstates) fail("bad state id");
        cur_state = static_cast<int>(q);
        std::string tail;
        std::getline(ls, tail);
        if (tail.find("{acc}") != std::string::npos) a.accepting[cur_state] = 1;
        continue;
      }
      if (line[0] == '[') {
        if (cur_state < 0) fail("edge before any State:");
        auto rb = line.rfind(']');
        if (rb == std::string::npos) fail("expected ']'");
        Guard g = dnf_parse(line.substr(1, rb - 1), nprops, lineno);
        long dst = std::stol(line.substr(rb + 1));
        if (dst < 0 || dst >= nstates) fail("edge target out of range");
        a.add_edge(static_cast<uint32_t>(cur_state), std::move(g), static_cast<uint32_t>(dst));
        continue;
      }
      fail("unrecognized body line: " + line);
    }
  }
  if (nstates < 0) throw ParseError("missing States: header");
  if (nprops < 0) throw ParseError("missing AP: header");

  // Recover (arity, aps) from name@index pairs; the flat order must match.
  int arity = 0;
  for (const auto& n : prop_names) {
    auto at = n.rfind('@');
    if (at == std::string::npos) throw ParseError("AP name without @index: " + n);
    arity = std::max(arity, std::stoi(n.substr(at + 1)) + 1);
  }
  if (arity == 0) arity = 1;
  if (nprops % arity != 0) throw ParseError("AP count not divisible by arity");
  int apc = nprops / arity;
  std::vector<std::string> aps;
  for (int j = 0; j < apc; ++j) {
    const std::string& n = prop_names[j];
    aps.push_back(n.substr(0, n.rfind('@')));
  }
  for (int i = 0; i < arity; ++i)
    for (int j = 0; j < apc; ++j) {
      std::string want = aps[j] + "@" + std::to_string(i);
      if (prop_names[i * apc + j] != want)
        throw ParseError("AP names are not a flat name@index grid: expected " + want +
                         ", got " + prop_names[i * apc + j]);
    }
  a.arity = arity;
  a.aps = std::move(aps);
  for (uint32_t q : a.initial)
    if (q >= a.num_states()) throw ParseError("initial state out of range");
  validate(a);
  return a;
}

// ---------------------------------------------------------------------------
// ba
// ---------------------------------------------------------------------------

std::string export_ba(const Nba& a) {
  if (a.flat_props() > kMaxBaProps)
    throw ResourceLimitError("alphabet too large for ba export (2^" +
                             std::to_string(a.flat_props()) + " letters)");
  const uint64_t nletters = 1ull << a.flat_props();
  std::ostringstream os;

  bool fresh_init = a.initial.size() != 1;
  uint32_t init = fresh_init ? static_cast<uint32_t>(a.num_states()) : a.initial[0];
  os << '[' << init << "]\n";
  auto emit_edges = [&](uint32_t print_src, uint32_t src) {
    for (const auto& e : a.edges[src])
      for (uint64_t l = 0; l < nletters; ++l)
        if (e.guard.matches(l)) os << l << ",[" << print_src << "]->[" << e.dst << "]\n";
  };
  if (fresh_init)
    for (uint32_t q : a.initial) emit_edges(init, q);
  for (uint32_t q = 0; q < a.num_states(); ++q) emit_edges(q, q);
  for (uint32_t q = 0; q < a.num_states(); ++q)
    if (a.accepting[q]) os << '[' << q << "]\n";
  return os.str();
}

Nba import_ba(const std::string& text, int min_bits) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool saw_init = false;
  std::string init_name;
  std::vector<std::tuple<uint64_t, std::string, std::string>> trans;
  std::vector<std::string> acc_names;
  uint64_t max_letter = 0;

  while (std::getline(is, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    auto arrow = line.find("->");
    if (arrow != std::string::npos) {
      auto comma = line.find(',');
      if (comma == std::string::npos || comma > arrow)
        throw ParseError("ba: expected letter,[src]->[dst]", lineno, 1);
      uint64_t letter = std::stoull(line.substr(0, comma));
      max_letter = std::max(max_letter, letter);
      auto src = line.substr(comma + 1, arrow - comma - 1);
      auto dst = line.substr(arrow + 2);
      auto unbracket = [&](std::string s) {
        if (s.size() < 2 || s.front() != '[' || s.back() != ']')
          throw ParseError("ba: expected bracketed state", lineno, 1);
        return s.substr(1, s.size() - 2);
      };
      trans.emplace_back(letter, unbracket(src), unbracket(dst));
    } else if (line.front() == '[' && line.back() == ']') {
      std::string name = line.substr(1, line.size() - 2);
      if (!saw_init) {
        init_name = name;
        saw_init = true;
      } else {
        acc_names.push_back(name);
      }
    } else {
      throw ParseError("ba: unrecognized line", lineno, 1);
    }
  }
  if (!saw_init) throw ParseError("ba: missing initial state line");

  int bits = std::max(min_bits, 1);
  while ((1ull << bits) <= max_letter) ++bits;
  if (bits > kMaxBaProps) throw ParseError("ba: letter ids exceed supported alphabet");

  Nba a;
  a.arity = 1;
  for (int b = 0; b < bits; ++b) a.aps.push_back("b" + std::to_string(b));

  std::map<std::string, uint32_t> ids;
  auto intern = [&](const std::string& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    uint32_t q = a.add_state(false);
    ids.emplace(s, q);
    return q;
  };
  a.initial.push_back(intern(init_name));
  uint64_t band = bits >= 64 ? ~0ull : ((1ull << bits) - 1);
  for (const auto& [letter, src, dst] : trans) {
    Cube c{letter, ~letter & band};
    a.add_edge(intern(src), Guard::of(c), intern(dst));
  }
  for (const auto& n : acc_names) a.accepting[intern(n)] = 1;
  validate(a);
  return a;
}

}  // namespace hymc
