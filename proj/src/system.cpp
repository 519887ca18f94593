#include "hymc/system.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hymc {

int TransitionSystem::ap_index(const std::string& name) const {
  for (size_t i = 0; i < aps.size(); ++i)
    if (aps[i] == name) return static_cast<int>(i);
  return -1;
}

void validate(const TransitionSystem& t) {
  if (t.aps.size() > 64) throw ValidationError("more than 64 atomic propositions");
  if (t.initial.empty()) throw ValidationError("missing initial state");
  if (t.label.size() != t.succ.size())
    throw ValidationError("label/successor table size mismatch");
  uint64_t declared = t.aps.size() == 64 ? ~0ull : ((1ull << t.aps.size()) - 1);
  for (uint32_t s : t.initial)
    if (s >= t.num_states()) throw ValidationError("initial state out of range");
  for (size_t s = 0; s < t.num_states(); ++s) {
    if (t.succ[s].empty())
      throw ValidationError("state " + std::to_string(s) + " has no successor");
    for (uint32_t d : t.succ[s])
      if (d >= t.num_states())
        throw ValidationError("edge target out of range in state " + std::to_string(s));
    if (t.label[s] & ~declared)
      throw ValidationError("state " + std::to_string(s) + " labeled with undeclared AP");
  }
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

TransitionSystem parse_system(const std::string& text) {
  TransitionSystem t;
  bool saw_aps = false, saw_init = false;
  std::vector<long> init_raw;
  std::map<long, uint32_t> id_map;                 // file id -> dense id
  std::vector<std::vector<long>> succ_raw;         // per dense id
  std::vector<long> decl_order;
  int pending_state = -1;                          // dense id awaiting its "->" line

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(msg, lineno, 1); };

  auto parse_id = [&](const std::string& w) -> long {
    try {
      size_t used = 0;
      long v = std::stol(w, &used);
      if (used != w.size() || v < 0) fail("state id must be a nonnegative integer: " + w);
      return v;
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      fail("state id must be a nonnegative integer: " + w);
    }
    return 0;
  };

  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    auto words = split_ws(line);
    if (words.empty()) continue;

    if (words[0] == "aps:") {
      if (saw_aps) fail("duplicate aps: line");
      saw_aps = true;
      for (size_t i = 1; i < words.size(); ++i) {
        if (std::find(t.aps.begin(), t.aps.end(), words[i]) != t.aps.end())
          fail("duplicate AP: " + words[i]);
        t.aps.push_back(words[i]);
      }
      if (t.aps.size() > 64) fail("more than 64 atomic propositions");
    } else if (words[0] == "init:") {
      if (saw_init) fail("duplicate init: line");
      saw_init = true;
      for (size_t i = 1; i < words.size(); ++i) init_raw.push_back(parse_id(words[i]));
      if (init_raw.empty()) fail("init: line lists no states");
    } else if (words[0] == "state") {
      if (pending_state >= 0) fail("state without successor line");
      if (!saw_aps) fail("aps: line must precede state declarations");
      // state <id> {<ap-list>}
      std::string rest = line.substr(line.find("state") + 5);
      auto lb = rest.find('{');
      auto rb = rest.find('}');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        fail("expected: state <id> {<ap-list>}");
      auto idw = split_ws(rest.substr(0, lb));
      if (idw.size() != 1) fail("expected exactly one state id");
      long id = parse_id(idw[0]);
      if (id_map.count(id)) fail("duplicate state id: " + std::to_string(id));
      uint32_t dense = static_cast<uint32_t>(succ_raw.size());
      id_map[id] = dense;
      decl_order.push_back(id);
      uint64_t mask = 0;
      for (const auto& ap : split_ws(rest.substr(lb + 1, rb - lb - 1))) {
        int j = t.ap_index(ap);
        if (j < 0) fail("undeclared AP in label: " + ap);
        mask |= 1ull << j;
      }
      t.label.push_back(mask);
      succ_raw.emplace_back();
      pending_state = static_cast<int>(dense);
    } else if (words[0] == "->") {
      if (pending_state < 0) fail("successor line without preceding state");
      for (size_t i = 1; i < words.size(); ++i)
        succ_raw[pending_state].push_back(parse_id(words[i]));
      if (succ_raw[pending_state].empty())
        fail("state " + std::to_string(decl_order[pending_state]) + " has no successor");
      pending_state = -1;
    } else {
      fail("unrecognized line: " + words[0]);
    }
  }
  lineno = 0;
  if (!saw_aps) throw ParseError("missing aps: line");
  if (!saw_init) throw ParseError("missing initial state");
  if (pending_state >= 0)
    throw ParseError("state " + std::to_string(decl_order[pending_state]) +
                     " has no successor line");

  auto resolve = [&](long id) -> uint32_t {
    auto it = id_map.find(id);
    if (it == id_map.end())
      throw ParseError("reference to undeclared state " + std::to_string(id));
    return it->second;
  };
  for (long id : init_raw) t.initial.push_back(resolve(id));
  std::sort(t.initial.begin(), t.initial.end());
  t.initial.erase(std::unique(t.initial.begin(), t.initial.end()), t.initial.end());
  t.succ.resize(succ_raw.size());
  for (size_t s = 0; s < succ_raw.size(); ++s) {
    for (long id : succ_raw[s]) t.succ[s].push_back(resolve(id));
    std::sort(t.succ[s].begin(), t.succ[s].end());
    t.succ[s].erase(std::unique(t.succ[s].begin(), t.succ[s].end()), t.succ[s].end());
  }
  validate(t);
  return t;
}

std::string print_system(const TransitionSystem& t) {
  std::ostringstream os;
  os << "aps:";
  for (const auto& a : t.aps) os << ' ' << a;
  os << "\ninit:";
  for (uint32_t s : t.initial) os << ' ' << s;
  os << '\n';
  for (size_t s = 0; s < t.num_states(); ++s) {
    os << "state " << s << " {";
    bool first = true;
    for (size_t j = 0; j < t.aps.size(); ++j)
      if (t.label[s] >> j & 1) {
        if (!first) os << ' ';
        os << t.aps[j];
        first = false;
      }
    os << "}\n->";
    for (uint32_t d : t.succ[s]) os << ' ' << d;
    os << '\n';
  }
  return os.str();
}

}  // namespace hymc
