// diagforge: command-line front end.
//
// Exit status: 0 success, 1 semantic rejection (the input was understood but
// refused, e.g. a rejected composition or an out-of-space run), 2 usage error.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "diagforge/diagforge.hpp"

namespace {

using namespace diagforge;
using report::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Rejected : std::runtime_error {
  Json body;
  Rejected(const std::string& what, Json b) : std::runtime_error(what), body(std::move(b)) {}
};

struct Globals {
  bool json = false;
  bool verbose = false;
  std::optional<std::string> config_path;
  WorkbenchConfig cfg;
};

Nat parse_nat(const std::string& s, const char* what) {
  try {
    return Nat::parse(s);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + " must be a natural number, got '" + s + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpaceBound space_of(const Globals& g, std::optional<std::uint64_t> flag) {
  const std::uint64_t s = flag.value_or(g.cfg.space);
  if (s == 0) throw UsageError("--space must be at least 1");
  return SpaceBound(s);
}

LimitRule rule_of(const std::string& s) {
  if (s == "limsup") return LimitRule::Limsup;
  if (s == "liminf") return LimitRule::Liminf;
  throw UsageError("--rule must be limsup or liminf");
}

FlagProtocol protocol_of(const std::string& s) {
  if (s == "settle") return FlagProtocol::Settle;
  if (s == "blink") return FlagProtocol::Blink;
  throw UsageError("--protocol must be settle or blink");
}

AtmProgram atm_of(const std::string& arg) {
  if (arg == "halting-solver" && !std::filesystem::exists(arg)) return AtmProgram::halting_solver();
  return AtmProgram::table(parse_tm(read_file(arg)), std::filesystem::path(arg).stem().string());
}

std::string text_of(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Text is a rendering of the JSON report: the answer, then (verbose) the rest.
void emit(const Globals& g, const Json& body) {
  if (g.json) {
    std::cout << body.dump(2) << "\n";
    return;
  }
  if (body.contains("answer")) std::cout << text_of(body["answer"]) << "\n";
  if (g.verbose || !body.contains("answer"))
    for (const auto& [k, v] : body.items())
      if (k != "answer") std::cout << k << ": " << text_of(v) << "\n";
}

void render_ledger_text(const Json& ledger) {
  std::vector<std::pair<std::string, const Json*>> rows;
  for (const auto& m : ledger["models"])
    for (const auto& c : m["codings"]) {
      std::string name = m["model"].get<std::string>();
      if (m["codings"].size() > 1) name += "/" + c["coding"].get<std::string>();
      rows.emplace_back(name, &c);
    }
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::cout << "model" << std::string(width - 3, ' ') << "1 2 3 4 5 6 7  missing\n";
  auto mark = [](const std::string& s) {
    if (s == "holds-checked") return "H";
    if (s == "holds-declared") return "h";
    if (s == "fails-checked") return "F";
    return "f";
  };
  for (const auto& [name, c] : rows) {
    std::cout << name << std::string(width + 2 - name.size(), ' ');
    for (const auto& p : (*c)["properties"]) std::cout << mark(p["status"].get<std::string>()) << ' ';
    std::cout << " {";
    bool first = true;
    for (const auto& x : (*c)["missing"]) {
      std::cout << (first ? "" : ",") << x.get<int>();
      first = false;
    }
    std::cout << "}\n";
  }
  std::cout << "H/h holds (checked/declared), F/f fails (checked/declared)\n";
  bool all = true;
  for (const auto& m : ledger["models"]) all = all && m["checks_passed"].get<bool>();
  std::cout << "executable checks: " << (all ? "all passed" : "FAILURES") << "\n";
}

Json out_of_space_body(const diagforge::OutOfSpace& e) {
  return {{"answer", "out-of-space"}, {"certificate", {{"step", e.step()}, {"cell", e.cell()}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagforge: diagonal constructions over a tower of machine models"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  std::string config_path;
  app.add_flag("--json", g.json, "Emit JSON reports");
  app.add_flag("-v,--verbose", g.verbose, "Text mode: print certificates too");
  app.add_option("--config", config_path, "JSON config file (else $DIAGFORGE_CONFIG)");

  std::function<Json()> action;
  std::string s1, s2, s3;
  std::optional<std::uint64_t> budget, space, cap, seed, threads, sample, max_input;
  std::string rule = "limsup", protocol = "settle";
  bool summary_only = false;

  // pr
  auto* pr = app.add_subcommand("pr", "Primitive recursive terms")->require_subcommand(1);
  auto* pr_decode = pr->add_subcommand("decode", "Print the term with index x");
  pr_decode->add_option("x", s1)->required();
  auto* pr_eval = pr->add_subcommand("eval", "psi_x(arg); x may also be a term");
  pr_eval->add_option("x", s1)->required();
  pr_eval->add_option("arg", s2)->required();
  pr_eval->add_option("--cap", cap, "Evaluation step cap");
  auto* pr_h = pr->add_subcommand("h", "h(x) = psi_x(x) + 1");
  pr_h->add_option("x", s1)->required();
  pr_h->add_option("--cap", cap, "Evaluation step cap");

  // tm
  auto* tm = app.add_subcommand("tm", "Plain machines")->require_subcommand(1);
  auto* tm_run = tm->add_subcommand("run", "Run a machine file on a unary input");
  tm_run->add_option("file", s1)->required();
  tm_run->add_option("input", s2)->required();
  tm_run->add_option("--budget", budget, "Step budget");

  // halt
  auto* halt = app.add_subcommand("halt", "Halting of machine x on input y")->require_subcommand(1);
  auto* halt_semi = halt->add_subcommand("semi", "Run and watch, up to a budget");
  halt_semi->add_option("x", s1)->required();
  halt_semi->add_option("y", s2)->required();
  halt_semi->add_option("--budget", budget, "Step budget");
  auto* halt_exact = halt->add_subcommand("exact", "Exact decision within a space bound");
  halt_exact->add_option("x", s1)->required();
  halt_exact->add_option("y", s2)->required();
  halt_exact->add_option("--space", space, "Space bound s (cells)");

  // diag
  auto* diag = app.add_subcommand("diag", "Diagonal functions")->require_subcommand(1);
  auto* diag_g = diag->add_subcommand("g", "g(x): 0 if machine x diverges on x");
  diag_g->add_option("x", s1)->required();
  diag_g->add_option("--space", space, "Space bound s (cells)");

  // atm
  auto* atm = app.add_subcommand("atm", "Accelerating machines")->require_subcommand(1);
  auto* atm_runc = atm->add_subcommand("run", "Run an accelerating machine file (or halting-solver)");
  atm_runc->add_option("file", s1)->required();
  atm_runc->add_option("input", s2)->required();
  atm_runc->add_option("--space", space, "Decide exactly within this space bound");
  atm_runc->add_option("--budget", budget, "Observation budget without --space");
  auto* atm_compose = atm->add_subcommand("compose", "Check whether B may consume A's output");
  atm_compose->add_option("fileA", s1)->required();
  atm_compose->add_option("fileB", s2)->required();
  atm_compose->add_option("--space", space, "Space bound for the certificate");
  atm_compose->add_option("--max-input", max_input, "Certify inputs 0..N (default 15)");

  // ittm
  auto* ittm = app.add_subcommand("ittm", "Infinite time machines")->require_subcommand(1);
  auto* ittm_dec = ittm->add_subcommand("decide", "Decide whether machine x halts on x at stage omega");
  ittm_dec->add_option("x", s1)->required();
  ittm_dec->add_option("--space", space, "Space bound s (cells)");
  ittm_dec->add_option("--rule", rule, "limsup or liminf");
  ittm_dec->add_option("--protocol", protocol, "Flag protocol: settle or blink");
  auto* ittm_lim = ittm->add_subcommand("limit", "Configuration at the first limit stage");
  ittm_lim->add_option("file", s1)->required();
  ittm_lim->add_option("--input", s2, "Unary input (default: blank tape)");
  ittm_lim->add_option("--space", space, "Space bound s (cells)");
  ittm_lim->add_option("--rule", rule, "limsup or liminf");

  // ledger
  auto* ledger = app.add_subcommand("ledger", "Seven-property ledger")->require_subcommand(1);
  auto* ledger_report = ledger->add_subcommand("report", "Audit every registered model");
  auto* ledger_witness = ledger->add_subcommand("witness", "Contradiction transcript for a full-house claim");
  ledger_witness->add_option("model", s1)->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Cross-check a subcommand over an index range");
  sweep->add_option("subcommand", s1, "One of: pr h, pr eval, halt exact, diag g, ittm decide, atm run")->required();
  sweep->add_option("range", s3, "a..b (half-open)");
  sweep->add_option("--space", space, "Space bound s (cells)");
  sweep->add_option("--cap", cap, "PR evaluation step cap");
  sweep->add_option("--threads", threads, "Worker threads");
  sweep->add_option("--sample", sample, "Test this many indices drawn from the range");
  sweep->add_option("--seed", seed, "Seed for --sample and pr eval arguments");
  sweep->add_flag("--summary-only", summary_only, "Omit per-index results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) g.config_path = config_path;
    g.cfg = load_config(g.config_path);
    if (g.cfg.json) g.json = true;

    const bool used_budget = budget.has_value();
    const std::uint64_t bud = budget.value_or(g.cfg.budget);
    if (used_budget && bud == 0) throw UsageError("--budget must be positive");
    const EvalLimits pr_limits{cap.value_or(g.cfg.pr_step_cap), EvalLimits{}.max_bits};
    if (cap && *cap == 0) throw UsageError("--cap must be positive");

    Json body;
    int status = 0;

    if (pr_decode->parsed()) {
      const PrTerm t = decode_index(GodelIndex(parse_nat(s1, "x")));
      body = {{"answer", t.to_string()}, {"certificate", {{"arity", t.arity()}, {"depth", t.depth()}}}};
    } else if (pr_eval->parsed()) {
      const Nat a = parse_nat(s2, "arg");
      EvalStats stats;
      const bool is_index = !s1.empty() && std::all_of(s1.begin(), s1.end(), [](unsigned char c) { return std::isdigit(c); });
      const PrTerm t = is_index ? decode_index(GodelIndex(parse_nat(s1, "x"))) : parse_pr(s1);
      const Nat v = is_index ? universal_pr_eval(GodelIndex(parse_nat(s1, "x")), a, pr_limits, &stats)
                             : eval_pr(t, coerce_unary(a, t.arity()), pr_limits, &stats);
      body = {{"answer", report::nat(v)}, {"certificate", {{"term", t.to_string()}, {"steps", stats.steps}}}};
    } else if (pr_h->parsed()) {
      const GodelIndex x(parse_nat(s1, "x"));
      EvalStats stats;
      const Nat v = universal_pr_eval(x, x.value, pr_limits, &stats);
      body = {{"answer", report::nat(v + Nat(1))}, {"certificate", {{"psi_x(x)", report::nat(v)}, {"steps", stats.steps}}}};
    } else if (tm_run->parsed()) {
      const TmSpec spec = parse_tm(read_file(s1));
      TmConfig cfg = initial_config(spec, parse_nat(s2, "input"));
      const RunOutcome r = run_bounded(spec, cfg, bud);
      body = report::run_outcome(r);
      if (std::holds_alternative<Halted>(r)) {
        for (std::uint64_t i = 0; i < std::get<Halted>(r).steps; ++i) advance(spec, cfg);
        body["certificate"]["tape"] = report::tape(spec, cfg);
      }
    } else if (halt_semi->parsed()) {
      body = report::oracle_answer(semi_decide_halt(GodelIndex(parse_nat(s1, "x")), parse_nat(s2, "y"), bud));
      body["tier"] = "semi";
    } else if (halt_exact->parsed()) {
      const SpaceBound b = space_of(g, space);
      const GodelIndex x(parse_nat(s1, "x"));
      const Nat y = parse_nat(s2, "y");
      const TmSpec spec = decode_tm(x);
      const TmConfig start = initial_config(spec, y);
      try {
        const OracleAnswer a = lba_halt_decide(spec, start, b);
        body = report::oracle_answer(a);
        body["certificate"]["replayed"] = replay_answer(spec, start, a);
        body["tier"] = "exact";
      } catch (const diagforge::OutOfSpace& e) {
        throw Rejected(e.what(), out_of_space_body(e));
      }
    } else if (diag_g->parsed()) {
      const SpaceBound b = space_of(g, space);
      const GodelIndex x(parse_nat(s1, "x"));
      try {
        const GResult r = diagonal_g(x, b);
        const OracleAnswer a = lba_halt_decide(x, x.value, b);
        body = {{"answer", std::holds_alternative<GValue>(r) ? Json(0) : Json("diverges")},
                {"certificate", report::oracle_answer(a)}};
      } catch (const diagforge::OutOfSpace& e) {
        throw Rejected(e.what(), out_of_space_body(e));
      }
    } else if (atm_runc->parsed()) {
      const AtmProgram prog = atm_of(s1);
      const Nat n = parse_nat(s2, "input");
      std::optional<SpaceBound> b;
      if (space) b = space_of(g, space);
      try {
        const AtmVerdict v = atm_run(prog, n, bud, b);
        body = report::atm_verdict(v);
        body["certificate"]["replayed"] = replay_verdict(prog, n, v);
        body["tier"] = b ? "exact-decider" : "accelerating-machine";
        if (b) body["internal_halting"] = report::tiered(internal_halt_query(prog, n, *b));
      } catch (const diagforge::OutOfSpace& e) {
        throw Rejected(e.what(), out_of_space_body(e));
      } catch (const WriteOnceViolation& e) {
        throw Rejected(e.what(), {{"answer", "write-once-violation"}, {"certificate", {{"step", e.step()}}}});
      }
    } else if (atm_compose->parsed()) {
      CompositionDomain dom;
      if (space) dom.bound = space_of(g, space);
      if (max_input) dom.max_input = *max_input;
      const ComposeReport r = compose_check(atm_of(s1), atm_of(s2), dom);
      body = report::compose(r);
      if (!r.accepted) status = 1;
    } else if (ittm_dec->parsed()) {
      const SpaceBound b = space_of(g, space);
      const LimitRule lr = rule_of(rule);
      const FlagProtocol fp = protocol_of(protocol);
      try {
        body = report::ittm_decision(ittm_decide_halting_detail(GodelIndex(parse_nat(s1, "x")), b, lr, fp), lr, fp);
      } catch (const diagforge::OutOfSpace& e) {
        throw Rejected(e.what(), out_of_space_body(e));
      }
    } else if (ittm_lim->parsed()) {
      const TmSpec spec = parse_tm(read_file(s1));
      const LimitRule lr = rule_of(rule);
      const TmConfig start = s2.empty() ? blank_config(spec) : initial_config(spec, parse_nat(s2, "input"));
      const LimitOutcome o = limit_config(spec, start, space_of(g, space), lr);
      body = report::limit(spec, o, lr);
      if (const auto* r = std::get_if<LimitResult>(&o)) body["certificate"]["replayed"] = verify_limit(spec, start, lr, *r);
      if (std::holds_alternative<LimitUnknown>(o)) status = 1;
    } else if (ledger_report->parsed()) {
      const Json l = report::ledger();
      if (g.json) {
        std::cout << l.dump(2) << "\n";
      } else {
        render_ledger_text(l);
      }
      return 0;
    } else if (ledger_witness->parsed()) {
      try {
        const Transcript t = contradiction_witness(s1);
        body = {{"answer", t.inconsistent ? "inconsistent" : "no contradiction derived"},
                {"transcript", report::transcript(t)}};
        if (!g.json) {
          for (const auto& line : t.lines) std::cout << line << "\n";
          return 0;
        }
      } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
      } catch (const PreconditionUnmet& e) {
        throw Rejected(std::string("precondition unmet: ") + e.what(),
                       {{"answer", "refused"}, {"reason", e.what()}});
      }
    } else if (sweep->parsed()) {
      SweepKind kind;
      IndexRange range;
      try {
        kind = parse_sweep_kind(s1);
        range = parse_range(s3.empty() ? g.cfg.range : s3);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      SweepOptions o;
      o.bound = space_of(g, space);
      o.pr_limits = pr_limits;
      o.threads = static_cast<std::size_t>(threads.value_or(g.cfg.threads));
      if (o.threads == 0) throw UsageError("--threads must be positive");
      o.sample = sample;
      o.seed = seed.value_or(g.cfg.seed);
      const SweepReport r = run_sweep(kind, range, o);
      const Json j = report::sweep(r, !summary_only);
      if (g.json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << j["subcommand"].get<std::string>() << " " << j["range"].get<std::string>() << ": ";
        std::cout << "agree " << r.summary.agree << ", disagree " << r.summary.disagree << ", unknown "
                  << r.summary.unknown << ", out_of_space " << r.summary.out_of_space << "\n";
      }
      return r.summary.disagree == 0 ? 0 : 1;
    }

    emit(g, body);
    return status;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Rejected& e) {
    if (g.json) std::cout << e.body.dump(2) << "\n";
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceExhausted& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 1;
  } catch (const ArityError& e) {
    std::cerr << "ill-formed term: " << e.what() << "\n";
    return 1;
  } catch (const JSpecRejected& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
