#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Result {
  int status;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Result run(const std::string& args) {
  const std::string cmd = std::string(DIAGFORGE_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string machine(const char* name) { return std::string(DIAGFORGE_MACHINES) + "/" + name; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Cli, PrHOfZeroIsOne) {
  const Result r = run("pr h 0");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(first_line(r.out), "1");
}

TEST(Cli, PrSubcommands) {
  EXPECT_EQ(first_line(run("pr decode 7").out), "P[2,2]");
  EXPECT_EQ(first_line(run("pr eval 1 41").out), "42");
  EXPECT_EQ(first_line(run("pr eval 'R[P[1,1]; C[S; P[2,3]]]' 4").out), "4");
  const auto j = nlohmann::json::parse(run("--json pr h 1").out);
  EXPECT_EQ(j["answer"], 3);
  EXPECT_EQ(j["certificate"]["psi_x(x)"], 2);
  EXPECT_EQ(run("pr eval 'C[S; P[1,2]; P[1,2]]' 1").status, 1);  // arity error
  EXPECT_EQ(run("pr eval 'C[S;' 1").status, 1);                  // parse error
  EXPECT_EQ(run("pr h -3").status, 2);
}

TEST(Cli, TmRun) {
  EXPECT_EQ(first_line(run("tm run " + machine("successor.tm") + " 3").out), "5");
  const Result loop = run("tm run " + machine("self_loop.tm") + " 0 --budget 30");
  EXPECT_EQ(loop.status, 0);
  EXPECT_EQ(first_line(loop.out), "unknown");
  EXPECT_EQ(run("tm run /nonexistent.tm 0").status, 2);
}

TEST(Cli, HaltTiers) {
  EXPECT_EQ(first_line(run("halt exact 7 3 --space 8").out), "halts");
  EXPECT_EQ(run("halt exact 0 0 --space 0").status, 2);
  const auto semi = nlohmann::json::parse(run("--json halt semi 3 3 --budget 100").out);
  EXPECT_NE(semi["answer"], "diverges");
  const Result oos = run("--json halt exact 14 14 --space 1");
  if (oos.status == 1) { EXPECT_EQ(nlohmann::json::parse(oos.out)["answer"], "out-of-space"); }
}

TEST(Cli, DiagG) {
  const Result r = run("--json diag g 4 --space 8");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["answer"] == 0, j["certificate"]["answer"] == "diverges");
}

TEST(Cli, AtmRunAndCompose) {
  EXPECT_EQ(first_line(run("atm run " + machine("atm_negation.tm") + " 0").out), "marked");
  EXPECT_EQ(first_line(run("atm run " + machine("atm_negation.tm") + " 1 --space 8").out), "unmarked-proven");
  EXPECT_EQ(run("atm run " + machine("atm_eraser.tm") + " 0").status, 1);

  const Result bad = run("--json atm compose halting-solver " + machine("atm_negation.tm") + " --space 8");
  EXPECT_EQ(bad.status, 1);
  const auto j = nlohmann::json::parse(bad.out);
  EXPECT_EQ(j["answer"], "reject");
  EXPECT_EQ(j["reason"], "output only stabilizes at external time");

  const Result good = run("atm compose " + machine("atm_negation.tm") + " " + machine("atm_negation.tm"));
  EXPECT_EQ(good.status, 0);
  EXPECT_EQ(first_line(good.out), "accept");
}

TEST(Cli, Ittm) {
  const Result d = run("ittm decide 0 --space 8");
  EXPECT_EQ(d.status, 0);
  EXPECT_EQ(first_line(d.out), "1");  // machine 0 halts at once
  for (const char* rule : {"limsup", "liminf"})
    for (const char* proto : {"settle", "blink"}) {
      EXPECT_EQ(first_line(run(std::string("ittm decide 0 --space 8 --rule ") + rule + " --protocol " + proto).out), "1");
    }
  EXPECT_EQ(run("ittm decide 0 --rule sideways").status, 2);
  const auto lim = nlohmann::json::parse(run("--json ittm limit " + machine("alternator.tm") + " --space 2").out);
  EXPECT_EQ(lim["certificate"]["cycle_length"], 2);
  EXPECT_EQ(lim["certificate"]["replayed"], true);
}

TEST(Cli, LedgerReportJsonHasEightModels) {
  const Result r = run("ledger report --json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["models"].size(), 8u);
  EXPECT_EQ(j["models"][0]["missing"], nlohmann::json::array({3}));
  EXPECT_EQ(run("--json ledger report").out, r.out);
}

TEST(Cli, LedgerWitness) {
  EXPECT_EQ(run("ledger witness toy-four-tables").status, 0);
  const auto j = nlohmann::json::parse(run("--json ledger witness atm-forced-composition").out);
  EXPECT_EQ(j["answer"], "inconsistent");
  EXPECT_EQ(run("ledger witness turing-machines").status, 1);
  EXPECT_EQ(run("ledger witness abacus").status, 2);
}

TEST(Cli, SweepIsDeterministic) {
  const Result a = run("--json sweep 'halt exact' 0..80 --space 8 --threads 1");
  const Result b = run("--json sweep 'halt exact' 0..80 --space 8 --threads 3");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["summary"]["disagree"], 0);
  EXPECT_EQ(j["items"].size(), 80u);
  const Result s = run("--json sweep 'pr h' 0..5000 --sample 25 --seed 4 --summary-only");
  EXPECT_EQ(s.out, run("--json sweep 'pr h' 0..5000 --sample 25 --seed 4 --summary-only").out);
  EXPECT_FALSE(nlohmann::json::parse(s.out).contains("items"));
}

TEST(Cli, SweepRejectsEmptyRangesAndUnknownKinds) {
  EXPECT_EQ(run("sweep 'pr h' 10..10").status, 2);
  EXPECT_EQ(run("sweep 'pr h' 10..3").status, 2);
  EXPECT_EQ(run("sweep 'tm run' 0..3").status, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("pr h").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, ConfigFileSetsDefaults) {
  const std::string path = "/tmp/diagforge_cli_cfg.json";
  FILE* f = fopen(path.c_str(), "w");
  fputs(R"({"format": "json", "space": 8})", f);
  fclose(f);
  const auto j = nlohmann::json::parse(run("--config " + path + " halt exact 7 3").out);
  EXPECT_EQ(j["answer"], "halts");
  EXPECT_EQ(run("--config /nonexistent.json pr h 0").status, 2);
}
