#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hymc/bench.hpp"
#include "hymc/inclusion.hpp"
#include "hymc/io_automata.hpp"
#include "support.hpp"

using namespace hymc;
using namespace testsup;

TEST_CASE("gen_system: p = 1 yields the complete digraph") {
  bench::GenStats gs;
  TransitionSystem t = bench::gen_system(5, 1.0, 1, 42, &gs);
  CHECK(gs.er_edges == 25);
  for (size_t s = 0; s < 5; ++s) CHECK(t.succ[s].size() == 5);
}

TEST_CASE("gen_system: fixed seed reproduces the system") {
  TransitionSystem a = bench::gen_system(20, 0.2, 2, 7);
  TransitionSystem b = bench::gen_system(20, 0.2, 2, 7);
  CHECK(a.succ == b.succ);
  CHECK(a.label == b.label);
}

TEST_CASE("gen_system: pre-repair mean outdegree tracks k for p = k/n") {
  bench::GenStats gs;
  bench::gen_system(1000, 10.0 / 1000.0, 1, 99, &gs);
  double mean = static_cast<double>(gs.er_edges) / 1000.0;
  CHECK(mean > 9.0);
  CHECK(mean < 11.0);
}

TEST_CASE("gen_system: every output is total and connected (property)") {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    TransitionSystem t = bench::gen_system(1 + seed % 12, (seed % 10) / 10.0, 2, seed);
    validate(t);  // totality among other things
    // connectivity: everything reachable from state 0
    std::vector<uint8_t> seen(t.num_states(), 0);
    std::vector<uint32_t> work{0};
    seen[0] = 1;
    while (!work.empty()) {
      uint32_t v = work.back();
      work.pop_back();
      for (uint32_t w : t.succ[v])
        if (!seen[w]) {
          seen[w] = 1;
          work.push_back(w);
        }
    }
    for (size_t s = 0; s < t.num_states(); ++s) CHECK(seen[s]);
  }
}

TEST_CASE("gen_formula: body size is exact, pattern maps to the prefix") {
  HyperFormula f = bench::gen_formula("ae", 7, 2, 5);
  CHECK(f.prefix.size() == 2);
  CHECK(f.prefix[0].first == Quantifier::Forall);
  CHECK(f.prefix[1].first == Quantifier::Exists);
  for (uint64_t seed = 0; seed < 200; ++seed) {
    int want = 1 + static_cast<int>(seed % 14);
    CHECK(body_size(bench::gen_formula("ea", want, 2, seed).body) == want);
  }
}

TEST_CASE("gen_formula: size-1 bodies are leaves") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    LtlRef b = bench::gen_formula("a", 1, 2, seed).body;
    CHECK(b->is_leaf());
  }
}

TEST_CASE("gen_formula output parses back (500 seeds)") {
  for (uint64_t seed = 0; seed < 500; ++seed) {
    HyperFormula f = bench::gen_formula(seed % 2 ? "aea" : "ae", 1 + seed % 10, 2, seed);
    CHECK(equal(parse_hyperltl(to_string(f)), f));
  }
}

TEST_CASE("export_inclusion_instance round-trips the verdict") {
  const char* tmp = "/tmp/hymc_test_export";
  TransitionSystem t = random_system(3, 2, 11);
  HyperFormula f = bench::gen_formula("ae", 4, 2, 13);
  Verdict v = check(t, f);
  auto ex = bench::export_inclusion_instance(t, f, tmp);
  REQUIRE(ex.files.size() >= 2);
  auto slurp = [](const std::string& p) {
    std::ifstream is(p);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
  };
  Nba sys = import_hoa_like(slurp(std::string(tmp) + ".sys.hoa"));
  Nba phi = import_hoa_like(slurp(std::string(tmp) + ".phi.hoa"));
  CHECK(include_complement(sys, phi).included == v.holds);
  for (const auto& p : ex.files) std::remove(p.c_str());
}

TEST_CASE("export_inclusion_instance rejects non-universal-leading formulas") {
  TransitionSystem t = random_system(3, 2, 17);
  HyperFormula f = bench::gen_formula("ea", 4, 2, 19);
  CHECK_THROWS_AS(bench::export_inclusion_instance(t, f, "/tmp/hymc_test_export2"),
                  ValidationError);
}

TEST_CASE("export_inclusion_instance skips ba for large alphabets") {
  // arity 2 with 18/2 = 9 APs would be fine; use 11 APs -> 22 flat props
  TransitionSystem t = bench::gen_system(2, 0.9, 11, 23);
  HyperFormula f = bench::gen_formula("aa", 3, 11, 29);
  auto ex = bench::export_inclusion_instance(t, f, "/tmp/hymc_test_export3");
  CHECK(ex.files.size() == 2);  // only the hoa-like pair
  REQUIRE(ex.notes.size() == 1);
  CHECK(ex.notes[0].find("alphabet too large") != std::string::npos);
  for (const auto& p : ex.files) std::remove(p.c_str());
}

TEST_CASE("sweep: smoke cell emits one row per sample plus header") {
  bench::SweepConfig cfg;
  cfg.sizes = {6};
  cfg.outdegree = 2;
  cfg.patterns = {"ae"};
  cfg.samples = 5;
  cfg.body_size = 4;
  cfg.ap_count = 2;
  cfg.timeout_secs = 10;
  std::string csv = bench::sweep(cfg);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line ==
        "pattern,n,p,body_size,seed,verdict,wall_ms,complement_ms_list,stage_sizes,engine,"
        "status");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.find("ae,6,") == 0);
    CHECK((line.find(",OK") != std::string::npos ||
           line.find(",TIMEOUT") != std::string::npos));
  }
  CHECK(rows == 5);
}

TEST_CASE("sweep: timeouts are recorded as status, not verdicts") {
  bench::SweepConfig cfg;
  cfg.sizes = {12};
  cfg.outdegree = 4;
  cfg.patterns = {"aea"};
  cfg.samples = 2;
  cfg.body_size = 12;
  cfg.ap_count = 2;
  cfg.timeout_secs = 0.000001;
  std::string csv = bench::sweep(cfg);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    CHECK(line.find("TIMEOUT") != std::string::npos);
    CHECK(line.find("-,") != std::string::npos);  // no verdict column value
  }
}

TEST_CASE("sweep: parallel run produces the same CSV as sequential") {
  bench::SweepConfig cfg;
  cfg.sizes = {5, 6};
  cfg.outdegree = 2;
  cfg.patterns = {"ae"};
  cfg.samples = 3;
  cfg.body_size = 4;
  cfg.timeout_secs = 30;
  std::string seq = bench::sweep(cfg);
  cfg.jobs = 4;
  std::string par = bench::sweep(cfg);
  // wall_ms differs between runs; compare rows without the timing column
  auto strip_times = [](const std::string& csv) {
    std::istringstream is(csv);
    std::string line, out;
    while (std::getline(is, line)) {
      std::vector<std::string> cols;
      std::istringstream ls(line);
      std::string c;
      while (std::getline(ls, c, ',')) cols.push_back(c);
      for (size_t i = 0; i < cols.size(); ++i)
        if (i != 6 && i != 7) out += cols[i] + ",";
      out += "\n";
    }
    return out;
  };
  CHECK(strip_times(seq) == strip_times(par));
}

TEST_CASE("sweep config parsing") {
  bench::SweepConfig cfg = bench::parse_sweep_config(
      "# demo\nsizes = 10, 20\noutdegree = 5\npatterns = ae, aea\nsamples = 3\n"
      "body_size = 8\nap_count = 2\nseed0 = 7\ntimeout = 2.5\nengine = antichain\n");
  CHECK(cfg.sizes == std::vector<size_t>{10, 20});
  CHECK(cfg.outdegree == 5.0);
  CHECK(cfg.patterns == std::vector<std::string>{"ae", "aea"});
  CHECK(cfg.engine == EngineKind::Antichain);
  CHECK_THROWS_AS(bench::parse_sweep_config("nonsense"), ParseError);
  CHECK_THROWS_AS(bench::parse_sweep_config("sizes = 5\n"), ParseError);
}
