#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hymc/bench.hpp"
#include "hymc/boolprog.hpp"
#include "hymc/checker.hpp"
#include "hymc/inclusion.hpp"
#include "hymc/io_automata.hpp"
#include "hymc/oracle.hpp"

namespace {

// Exit codes: 0 holds, 1 fails, 2 usage/parse error, 3 resource failure
// (cap/timeout/external tool). Verdicts are never conflated with failures.
constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw hymc::ValidationError("cannot read file: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw hymc::ValidationError("cannot write file: " + path);
  os << content;
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

hymc::Engine parse_engine(const std::string& s) {
  if (s == "complement") return hymc::Engine::complement();
  if (s == "antichain") return hymc::Engine::antichain();
  if (s.rfind("external:", 0) == 0) return hymc::Engine::external(s.substr(9));
  throw hymc::ValidationError("unknown engine: " + s +
                              " (use complement|antichain|external:CMD)");
}

hymc::Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return hymc::Strategy::Auto;
  if (s == "pure-abv") return hymc::Strategy::PureAbv;
  if (s == "inclusion") return hymc::Strategy::Inclusion;
  throw hymc::ValidationError("unknown strategy: " + s + " (use auto|pure-abv|inclusion)");
}

struct CheckArgs {
  std::string system_file, formula_file, formula_inline;
  std::string engine = "complement", strategy = "auto", stats;
  bool witness = false, oracle = false;
  double timeout = 0;
};

int run_check(const CheckArgs& args) {
  hymc::TransitionSystem t = hymc::parse_system(read_file(args.system_file));
  std::string ftext = args.formula_file.empty() ? args.formula_inline
                                                : read_file(args.formula_file);
  hymc::HyperFormula f = hymc::parse_hyperltl(ftext);

  hymc::CheckOptions opts;
  opts.engine = parse_engine(args.engine);
  opts.strategy = parse_strategy(args.strategy);
  if (args.timeout > 0) opts.limits.deadline = hymc::Deadline::after_seconds(args.timeout);

  hymc::Verdict v = hymc::check(t, f, opts);
  std::cout << (v.holds ? "HOLDS" : "FAILS") << "\n";
  if (args.witness) {
    if (v.witness)
      std::cout << "WITNESS "
                << (*v.witness_role == hymc::WitnessRole::ExistentialWitness
                        ? "existential-witness "
                        : "universal-counterexample ")
                << hymc::to_string(*v.witness, t.aps) << "\n";
    else
      std::cout << "WITNESS none\n";
  }
  if (args.stats == "csv" || args.stats == "text")
    std::cout << hymc::stats_report(v, args.stats == "csv");

  if (args.oracle) {
    try {
      bool ref = hymc::oracle::decide_naive(t, f);
      if (ref != v.holds) {
        std::cout << "ERROR oracle disagreement: checker says "
                  << (v.holds ? "HOLDS" : "FAILS") << ", reference says "
                  << (ref ? "HOLDS" : "FAILS") << "\n";
        return kExitResource;
      }
      std::cerr << "oracle: verdict confirmed\n";
    } catch (const hymc::OracleBoundsError& e) {
      std::cerr << "oracle: skipped (" << e.what() << ")\n";
    }
  }
  return v.holds ? kExitHolds : kExitFails;
}

int run_include(const std::string& fa, const std::string& fb, const std::string& engine,
                double timeout) {
  hymc::Nba a = hymc::import_ba(read_file(fa));
  hymc::Nba b = hymc::import_ba(read_file(fb));
  // align alphabets (letter ids share one space)
  int bits = std::max(a.flat_props(), b.flat_props());
  if (a.flat_props() < bits) a = hymc::import_ba(read_file(fa), bits);
  if (b.flat_props() < bits) b = hymc::import_ba(read_file(fb), bits);

  hymc::Limits limits;
  if (timeout > 0) limits.deadline = hymc::Deadline::after_seconds(timeout);
  hymc::InclusionOutcome out;
  if (engine == "antichain")
    out = hymc::include_antichain(a, b, limits);
  else
    out = hymc::include_complement(a, b, limits);
  if (out.included) {
    std::cout << "INCLUDED\n";
  } else {
    std::cout << "NOT INCLUDED\n";
    if (out.counterexample) {
      std::cout << "CEX:";
      for (uint64_t l : out.counterexample->stem) std::cout << ' ' << l;
      std::cout << " $";
      for (uint64_t l : out.counterexample->loop) std::cout << ' ' << l;
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit-state HyperLTL model checker"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "decide T |= formula");
  check->add_option("--system", ca.system_file, "system file")->required();
  auto* ff = check->add_option("--formula", ca.formula_file, "formula file");
  check->add_option("--formula-inline", ca.formula_inline, "formula text")->excludes(ff);
  check->add_option("--engine", ca.engine, "complement|antichain|external:CMD");
  check->add_option("--strategy", ca.strategy, "auto|pure-abv|inclusion");
  check->add_flag("--witness", ca.witness, "print witness/counterexample when available");
  check->add_flag("--oracle", ca.oracle, "re-check with the reference oracle (self-check)");
  check->add_option("--timeout", ca.timeout, "wall-clock budget in seconds");
  check->add_option("--stats", ca.stats, "csv|text");

  std::string prog_file, out_file;
  int bitwidth = 1;
  auto* explode = app.add_subcommand("explode", "boolean program -> explicit system");
  explode->add_option("--program", prog_file, "program file")->required();
  explode->add_option("--bitwidth", bitwidth, "variable bitwidth")->required();
  explode->add_option("--out", out_file, "output system file")->required();

  auto* gen = app.add_subcommand("gen", "random instance generators");
  gen->require_subcommand(1);
  size_t gn = 10;
  double gp = 0.3;
  int gaps = 2, gbody = 10;
  uint64_t gseed = 1;
  std::string gpattern = "ae", gout;
  auto* gsys = gen->add_subcommand("system", "random transition system");
  gsys->add_option("--n", gn, "states")->required();
  gsys->add_option("--p", gp, "edge probability")->required();
  gsys->add_option("--aps", gaps, "AP count");
  gsys->add_option("--seed", gseed, "seed");
  gsys->add_option("--out", gout, "output file (default stdout)");
  auto* gform = gen->add_subcommand("formula", "random formula");
  gform->add_option("--pattern", gpattern, "quantifier pattern, e.g. aae")->required();
  gform->add_option("--body-size", gbody, "body node count");
  gform->add_option("--aps", gaps, "AP count");
  gform->add_option("--seed", gseed, "seed");
  gform->add_option("--out", gout, "output file (default stdout)");

  std::string sweep_config, sweep_out;
  int sweep_jobs = 0;
  auto* sw = app.add_subcommand("sweep", "run a benchmark sweep from a config file");
  sw->add_option("--config", sweep_config, "key=value config file")->required();
  sw->add_option("--jobs", sweep_jobs, "worker threads (overrides config)");
  sw->add_option("--out", sweep_out, "CSV output file (default stdout)");

  std::string ei_system, ei_formula, ei_prefix;
  auto* ei = app.add_subcommand("export-inclusion",
                                "export a check as a language-inclusion benchmark");
  ei->add_option("--system", ei_system, "system file")->required();
  ei->add_option("--formula", ei_formula, "formula file")->required();
  ei->add_option("--out-prefix", ei_prefix, "output path prefix")->required();

  std::string inc_a, inc_b, inc_engine = "complement";
  double inc_timeout = 0;
  auto* inc = app.add_subcommand("include", "L(A) subseteq L(B) on two ba files");
  inc->add_option("--a", inc_a, "ba file A")->required();
  inc->add_option("--b", inc_b, "ba file B")->required();
  inc->add_option("--engine", inc_engine, "complement|antichain");
  inc->add_option("--timeout", inc_timeout, "wall-clock budget in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << "ERROR " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (check->parsed()) {
      if (ca.formula_file.empty() && ca.formula_inline.empty())
        throw hymc::ValidationError("one of --formula/--formula-inline is required");
      return run_check(ca);
    }
    if (explode->parsed()) {
      hymc::BoolProgram p = hymc::parse_boolprog(read_file(prog_file));
      hymc::TransitionSystem t = hymc::explode_program(p, bitwidth);
      write_file(out_file, hymc::print_system(t));
      std::cerr << "exploded to " << t.num_states() << " states\n";
      return 0;
    }
    if (gsys->parsed()) {
      write_out(gout, hymc::print_system(hymc::bench::gen_system(gn, gp, gaps, gseed)));
      return 0;
    }
    if (gform->parsed()) {
      write_out(gout,
                hymc::to_string(hymc::bench::gen_formula(gpattern, gbody, gaps, gseed)) + "\n");
      return 0;
    }
    if (sw->parsed()) {
      hymc::bench::SweepConfig cfg = hymc::bench::parse_sweep_config(read_file(sweep_config));
      if (sweep_jobs > 0) cfg.jobs = sweep_jobs;
      write_out(sweep_out, hymc::bench::sweep(cfg));
      return 0;
    }
    if (ei->parsed()) {
      hymc::TransitionSystem t = hymc::parse_system(read_file(ei_system));
      hymc::HyperFormula f = hymc::parse_hyperltl(read_file(ei_formula));
      auto ex = hymc::bench::export_inclusion_instance(t, f, ei_prefix);
      for (const auto& p : ex.files) std::cout << "wrote " << p << "\n";
      for (const auto& n : ex.notes) std::cout << "note: " << n << "\n";
      return 0;
    }
    if (inc->parsed()) return run_include(inc_a, inc_b, inc_engine, inc_timeout);
  } catch (const hymc::TimeoutError&) {
    std::cout << "TIMEOUT\n";
    return kExitResource;
  } catch (const hymc::ParseError& e) {
    std::cout << "ERROR " << e.what() << "\n";
    return kExitUsage;
  } catch (const hymc::ValidationError& e) {
    std::cout << "ERROR " << e.what() << "\n";
    return kExitUsage;
  } catch (const hymc::OracleBoundsError& e) {
    std::cout << "ERROR " << e.what() << "\n";
    return kExitUsage;
  } catch (const hymc::ResourceLimitError& e) {
    std::cout << "ERROR " << e.what() << "\n";
    return kExitResource;
  } catch (const hymc::ExternalToolError& e) {
    std::cout << "ERROR " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cout << "ERROR " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}
