#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(HYMC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  os << content;
}

const char* kTrivialSystem = "aps: a\ninit: 0\nstate 0 {}\n-> 0\n";

}  // namespace

TEST_CASE("cli: holds verdict, exit 0") {
  write_file("/tmp/hymc_cli_sys.txt", kTrivialSystem);
  RunResult r = run("check --system /tmp/hymc_cli_sys.txt --formula-inline 'exists p. G !a_p'");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("HOLDS", 0) == 0);
}

TEST_CASE("cli: fails verdict, exit 1") {
  write_file("/tmp/hymc_cli_sys.txt", kTrivialSystem);
  RunResult r = run("check --system /tmp/hymc_cli_sys.txt --formula-inline 'exists p. F a_p'");
  CHECK(r.exit_code == 1);
  CHECK(r.out.rfind("FAILS", 0) == 0);
}

TEST_CASE("cli: malformed formula, exit 2 with position") {
  write_file("/tmp/hymc_cli_sys.txt", kTrivialSystem);
  RunResult r = run("check --system /tmp/hymc_cli_sys.txt --formula-inline 'exists p. (a_p'");
  CHECK(r.exit_code == 2);
  CHECK(r.out.rfind("ERROR", 0) == 0);
  CHECK(r.out.find("line") != std::string::npos);
}

TEST_CASE("cli: forced timeout, exit 3, TIMEOUT first token") {
  write_file("/tmp/hymc_cli_sweep_sys.txt", kTrivialSystem);
  RunResult gen = run("gen system --n 14 --p 0.3 --aps 2 --seed 3 --out /tmp/hymc_cli_big.txt");
  CHECK(gen.exit_code == 0);
  RunResult r = run(
      "check --system /tmp/hymc_cli_big.txt "
      "--formula-inline 'forall p. exists q. forall r. G (a_p <-> b_q U a_r)' "
      "--timeout 0.001");
  CHECK(r.exit_code == 3);
  CHECK(r.out.rfind("TIMEOUT", 0) == 0);
}

TEST_CASE("cli: witness line is printed on demand") {
  write_file("/tmp/hymc_cli_sys2.txt",
             "aps: a\ninit: 0\nstate 0 {a}\n-> 0 1\nstate 1 {}\n-> 1\n");
  RunResult r = run(
      "check --system /tmp/hymc_cli_sys2.txt --formula-inline 'forall p. G a_p' --witness");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("WITNESS universal-counterexample") != std::string::npos);
  CHECK(r.out.find("STEM:") != std::string::npos);
  CHECK(r.out.find("LOOP:") != std::string::npos);
}

TEST_CASE("cli: oracle self-check mode") {
  write_file("/tmp/hymc_cli_sys.txt", kTrivialSystem);
  RunResult r = run(
      "check --system /tmp/hymc_cli_sys.txt --formula-inline 'forall p. G !a_p' --oracle");
  CHECK(r.exit_code == 0);
}

TEST_CASE("cli: explode then check") {
  write_file("/tmp/hymc_cli_prog.txt",
             "var h, l, o; observe h as h; observe l as l; observe o as o;\n"
             "while (true) { h := input(); l := input(); o := l; }\n");
  RunResult e = run(
      "explode --program /tmp/hymc_cli_prog.txt --bitwidth 1 --out /tmp/hymc_cli_ts.txt");
  CHECK(e.exit_code == 0);
  write_file("/tmp/hymc_cli_gni.txt",
             "forall p1. forall p2. exists p3. "
             "(G (h_p1 <-> h_p3)) & (G ((l_p2 <-> l_p3) & (o_p2 <-> o_p3)))\n");
  RunResult c = run(
      "check --system /tmp/hymc_cli_ts.txt --formula /tmp/hymc_cli_gni.txt");
  CHECK(c.exit_code == 0);
  CHECK(c.out.rfind("HOLDS", 0) == 0);
}

TEST_CASE("cli: gen outputs are parseable and deterministic") {
  RunResult s1 = run("gen system --n 8 --p 0.4 --aps 2 --seed 9");
  RunResult s2 = run("gen system --n 8 --p 0.4 --aps 2 --seed 9");
  CHECK(s1.out == s2.out);
  RunResult f1 = run("gen formula --pattern aea --body-size 9 --aps 2 --seed 4");
  CHECK(f1.exit_code == 0);
  CHECK(f1.out.find("forall p1.") == 0);
}

TEST_CASE("cli: sweep with config file") {
  write_file("/tmp/hymc_cli_sweep.cfg",
             "sizes = 5\noutdegree = 2\npatterns = ae\nsamples = 2\nbody_size = 4\n"
             "ap_count = 2\ntimeout = 10\n");
  RunResult r = run("sweep --config /tmp/hymc_cli_sweep.cfg");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("pattern,n,p,", 0) == 0);
}

TEST_CASE("cli: export-inclusion writes files") {
  write_file("/tmp/hymc_cli_sys.txt", kTrivialSystem);
  write_file("/tmp/hymc_cli_f.txt", "forall p. exists q. G (a_p <-> a_q)\n");
  RunResult r = run(
      "export-inclusion --system /tmp/hymc_cli_sys.txt --formula /tmp/hymc_cli_f.txt "
      "--out-prefix /tmp/hymc_cli_inst");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("hymc_cli_inst.sys.hoa") != std::string::npos);
  std::ifstream check_file("/tmp/hymc_cli_inst.phi.ba");
  CHECK(check_file.good());
}

TEST_CASE("cli: usage error yields exit 2") {
  RunResult r = run("check --formula-inline 'true'");  // missing --system
  CHECK(r.exit_code == 2);
  CHECK(r.out.rfind("ERROR", 0) == 0);
}
