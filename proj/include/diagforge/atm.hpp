#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "diagforge/bounded.hpp"
#include "diagforge/catalog.hpp"
#include "diagforge/cycle.hpp"
#include "diagforge/errors.hpp"
#include "diagforge/halting.hpp"
#include "diagforge/tm.hpp"
#include "diagforge/tm_numbering.hpp"

// Accelerating machines.
//
// An accelerating machine is an ordinary machine whose cell 0 is a write-once
// output square, read once at external time. Internally it may run forever;
// the answer is "yes" iff the square ever gets marked. We never execute
// infinitely many steps: "ever" is decided exactly only for runs confined to
// a space bound, and otherwise observed up to a step budget.
//
// Layout: the head starts on the output square (cell 0) and input n is n+1
// ones on cells 1..n+1.
namespace diagforge {

inline constexpr std::int64_t kOutputCell = 0;

inline TmConfig atm_initial_config(const TmSpec& spec, const Nat& input) {
  if (!input.fits_u64() || input.to_u64() > kMaxUnaryInput)
    throw std::length_error("unary input too large to lay out: " + input.str());
  const auto n = static_cast<std::int64_t>(input.to_u64());
  TmConfig cfg;
  cfg.state = spec.start();
  for (std::int64_t c = 1; c <= n + 1; ++c) cfg.tape.emplace_hint(cfg.tape.end(), c, kOne);
  return cfg;
}

enum class AtmKind {
  Table,          // a machine table run directly
  HaltingSolver,  // on input x, simulates machine x on x and marks iff it halts
  SemiDecider,    // simulates a fixed semi-decider on the input and marks iff it accepts
};

class AtmProgram {
 public:
  static AtmProgram table(TmSpec spec, std::string name = "table") {
    return AtmProgram(AtmKind::Table, std::move(spec), std::move(name));
  }
  static AtmProgram halting_solver() { return AtmProgram(AtmKind::HaltingSolver, std::nullopt, "halting-solver"); }
  static AtmProgram semi_decider(TmSpec spec, std::string name = "semi-decider") {
    return AtmProgram(AtmKind::SemiDecider, std::move(spec), std::move(name));
  }

  AtmKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  bool has_spec() const noexcept { return spec_.has_value(); }

  const TmSpec& spec() const {
    if (!spec_) throw std::logic_error("the halting solver has no fixed table");
    return *spec_;
  }

  // The plain machine a simulating program runs on `input`, in the plain
  // machine input layout.
  TmSpec simulated(const Nat& input) const {
    if (kind_ == AtmKind::HaltingSolver) return decode_tm(GodelIndex(input));
    return spec();
  }

 private:
  AtmProgram(AtmKind kind, std::optional<TmSpec> spec, std::string name)
      : kind_(kind), spec_(std::move(spec)), name_(std::move(name)) {}

  AtmKind kind_;
  std::optional<TmSpec> spec_;
  std::string name_;
};

// --- verdicts

// The marking transition was move number `step` (1-based).
struct Marked {
  std::uint64_t step;
  friend bool operator==(const Marked&, const Marked&) = default;
};

struct UnmarkedAtBudget {
  std::uint64_t budget;
  friend bool operator==(const UnmarkedAtBudget&, const UnmarkedAtBudget&) = default;
};

struct HaltedUnmarked {
  std::uint64_t steps;
  friend bool operator==(const HaltedUnmarked&, const HaltedUnmarked&) = default;
};

// The marking event is unreachable: the internal run halts without it, or
// enters a cycle (every later configuration was already visited unmarked).
struct UnmarkedProven {
  std::variant<HaltedUnmarked, Cycle> certificate;
  friend bool operator==(const UnmarkedProven&, const UnmarkedProven&) = default;
};

using AtmVerdict = std::variant<Marked, UnmarkedAtBudget, UnmarkedProven>;

inline bool is_marked(const AtmVerdict& v) { return std::holds_alternative<Marked>(v); }

namespace detail {

// Output-square discipline for one transition at the output cell. Returns
// true when the transition is the marking event.
inline bool check_output_write(Symbol current, Symbol written, std::uint64_t step) {
  if (current == kBlank) {
    if (written == kOne) return true;
    if (written == kBlank) return false;
    throw WriteOnceViolation(step, "step " + std::to_string(step) +
                                       ": output square written with a symbol other than 1");
  }
  if (written != current)
    throw WriteOnceViolation(step, "step " + std::to_string(step) + ": output square changed after marking");
  return false;
}

// A table program confined to a region, tracking the output square.
class AtmMachine {
 public:
  struct Config {
    DenseConfig c;
    std::uint64_t steps = 0;
    friend bool operator==(const Config& a, const Config& b) { return a.c == b.c; }
  };

  AtmMachine(const TmSpec& spec, Region region) : inner_(spec, region), out_(inner_.offset(kOutputCell)) {}

  const BoundedMachine& inner() const { return inner_; }
  Config load(const TmConfig& cfg) const { return {inner_.load(cfg), cfg.steps}; }
  std::optional<std::uint64_t> first_mark() const { return mark_; }

  Advance advance(Config& cfg) const {
    const Action* a = inner_.spec().action(cfg.c.state, cfg.c.cells[cfg.c.head]);
    if (!a) return Advance::Stopped;
    bool marks = false;
    if (cfg.c.head == out_) marks = check_output_write(cfg.c.cells[out_], a->write, cfg.steps + 1);
    const Advance r = inner_.advance(cfg.c);
    if (r != Advance::Moved) return r;
    ++cfg.steps;
    if (marks && (!mark_ || cfg.steps < *mark_)) mark_ = cfg.steps;
    return r;
  }

 private:
  BoundedMachine inner_;
  std::size_t out_;
  mutable std::optional<std::uint64_t> mark_;
};

static_assert(FiniteSystem<AtmMachine>);

struct TableRun {
  AtmVerdict verdict;
  std::uint64_t internal_steps;  // steps executed (the budget when cut off)
  bool halted;
};

// Reference run on the sparse simulator, up to `budget` steps. Keeps going
// after the mark so later violations are still caught.
inline TableRun run_table_budget(const TmSpec& spec, TmConfig cfg, std::uint64_t budget) {
  std::optional<std::uint64_t> mark;
  while (cfg.steps < budget) {
    const Symbol current = cfg.read(cfg.head);
    const Action* a = spec.action(cfg.state, current);
    if (!a) {
      if (mark) return {Marked{*mark}, cfg.steps, true};
      return {UnmarkedProven{HaltedUnmarked{cfg.steps}}, cfg.steps, true};
    }
    const bool on_output = cfg.head == kOutputCell;
    if (on_output && check_output_write(current, a->write, cfg.steps + 1) && !mark) mark = cfg.steps + 1;
    advance(spec, cfg);
  }
  if (is_halted(spec, cfg)) {
    if (mark) return {Marked{*mark}, cfg.steps, true};
    return {UnmarkedProven{HaltedUnmarked{cfg.steps}}, cfg.steps, true};
  }
  if (mark) return {Marked{*mark}, budget, false};
  return {UnmarkedAtBudget{budget}, budget, false};
}

inline TableRun run_table_exact(const TmSpec& spec, const TmConfig& start, SpaceBound bound,
                                const ExactLimits& limits) {
  const Region region = region_for(start, bound);
  AtmMachine m(spec, region);
  const Trajectory t = classify(m, m.load(start), limits.max_steps);
  if (const auto* e = std::get_if<Escaped>(&t)) {
    TmConfig probe = start;
    for (std::uint64_t i = 0; i < e->step; ++i) diagforge::advance(spec, probe);
    throw OutOfSpace(e->step, probe.head);
  }
  if (const auto* s = std::get_if<Stopped>(&t)) {
    if (m.first_mark()) return {Marked{*m.first_mark()}, s->steps, true};
    return {UnmarkedProven{HaltedUnmarked{s->steps}}, s->steps, true};
  }
  const Cycle c = std::get<Cycle>(t);
  if (m.first_mark()) return {Marked{*m.first_mark()}, c.start + c.length, false};
  return {UnmarkedProven{c}, c.start + c.length, false};
}

// Exact classification of a plain machine's run, on the sparse engine.
inline Trajectory classify_sparse(const TmSpec& spec, const TmConfig& start, SpaceBound bound,
                                  const ExactLimits& limits) {
  SparseBoundedMachine m(spec, region_for(start, bound));
  return classify(m, SparseBoundedMachine::Config{start}, limits.max_steps);
}

inline AtmVerdict simulate_verdict(const TmSpec& spec, const Nat& input, std::uint64_t budget,
                                   std::optional<SpaceBound> bound, const ExactLimits& limits) {
  const TmConfig start = initial_config(spec, input);
  if (!bound) {
    const RunOutcome r = run_bounded(spec, start, budget);
    if (const auto* h = std::get_if<Halted>(&r)) return Marked{h->steps + 1};
    return UnmarkedAtBudget{budget};
  }
  const Trajectory t = classify_sparse(spec, start, *bound, limits);
  if (const auto* s = std::get_if<Stopped>(&t)) return Marked{s->steps + 1};
  if (const auto* c = std::get_if<Cycle>(&t)) return UnmarkedProven{*c};
  const auto& e = std::get<Escaped>(t);
  TmConfig probe = start;
  for (std::uint64_t i = 0; i < e.step; ++i) diagforge::advance(spec, probe);
  throw OutOfSpace(e.step, probe.head);
}

}  // namespace detail

/// Runs an accelerating program on `input`.
///
/// With a space bound the verdict is exact (Marked or UnmarkedProven) or the
/// run is out of space. Without one, the run is observed for `budget` steps
/// and an unmarked, still running machine yields UnmarkedAtBudget.
/// A simulating program marks one step after its simulated machine halts.
inline AtmVerdict atm_run(const AtmProgram& prog, const Nat& input, std::uint64_t budget,
                          std::optional<SpaceBound> bound = std::nullopt, const ExactLimits& limits = {}) {
  if (prog.kind() != AtmKind::Table)
    return detail::simulate_verdict(prog.simulated(input), input, budget, bound, limits);
  const TmConfig start = atm_initial_config(prog.spec(), input);
  if (bound) return detail::run_table_exact(prog.spec(), start, *bound, limits).verdict;
  return detail::run_table_budget(prog.spec(), start, budget).verdict;
}

/// The characteristic function of the set a semi-decider accepts: marks iff
/// `semi` halts on n.
inline AtmVerdict re_characteristic(const TmSpec& semi, const Nat& n, std::uint64_t budget,
                                    std::optional<SpaceBound> bound = std::nullopt, const ExactLimits& limits = {}) {
  return atm_run(AtmProgram::semi_decider(semi), n, budget, bound, limits);
}

/// Checks a verdict on the sparse simulator, from scratch.
inline bool replay_verdict(const AtmProgram& prog, const Nat& input, const AtmVerdict& v) {
  if (std::holds_alternative<UnmarkedAtBudget>(v)) return true;
  if (prog.kind() != AtmKind::Table) {
    const TmSpec spec = prog.simulated(input);
    const TmConfig start = initial_config(spec, input);
    if (const auto* m = std::get_if<Marked>(&v)) return m->step >= 1 && replay_halts(spec, start, m->step - 1);
    const auto& cert = std::get<UnmarkedProven>(v).certificate;
    if (const auto* c = std::get_if<Cycle>(&cert)) return replay_cycle(spec, start, {c->start, c->length});
    return false;  // a simulating program that halts always marks
  }

  const TmSpec& spec = prog.spec();
  TmConfig cfg = atm_initial_config(spec, input);
  std::uint64_t marks = 0;
  std::optional<std::uint64_t> mark_step;
  auto step_once = [&]() -> bool {
    const Symbol cur = cfg.read(cfg.head);
    const Action* a = spec.action(cfg.state, cur);
    if (!a) return false;
    if (cfg.head == kOutputCell && a->write != cur) {
      ++marks;
      if (!mark_step) mark_step = cfg.steps + 1;
    }
    advance(spec, cfg);
    return true;
  };

  if (const auto* m = std::get_if<Marked>(&v)) {
    for (std::uint64_t i = 0; i < m->step; ++i)
      if (!step_once()) return false;
    return marks == 1 && mark_step == m->step && cfg.read(kOutputCell) == kOne;
  }
  const auto& cert = std::get<UnmarkedProven>(v).certificate;
  if (const auto* h = std::get_if<HaltedUnmarked>(&cert)) {
    for (std::uint64_t i = 0; i < h->steps; ++i)
      if (!step_once()) return false;
    return is_halted(spec, cfg) && marks == 0;
  }
  const auto& c = std::get<Cycle>(cert);
  if (c.length == 0) return false;
  for (std::uint64_t i = 0; i < c.start; ++i)
    if (!step_once()) return false;
  const TmConfig at = cfg;
  for (std::uint64_t i = 0; i < c.length; ++i)
    if (!step_once()) return false;
  return cfg.same_state(at) && marks == 0;
}

// --- write-once validation

struct CompositionDomain {
  std::uint64_t max_input = 15;  // inputs 0..max_input
  SpaceBound bound{16};
};

struct WriteOnceReport {
  bool ok = true;
  std::optional<std::uint64_t> input;  // first violating input
  std::optional<std::uint64_t> step;
  std::string message;
};

/// Explores every run of a table program on the domain and reports the first
/// change of the output square other than the single marking write. Runs that
/// leave the space bound are explored on the sparse simulator up to `budget`.
inline WriteOnceReport validate_write_once(const AtmProgram& prog, const CompositionDomain& domain = {},
                                           std::uint64_t budget = 100'000) {
  if (prog.kind() != AtmKind::Table) return {};  // simulating programs only ever write the mark
  for (std::uint64_t n = 0; n <= domain.max_input; ++n) {
    const TmConfig start = atm_initial_config(prog.spec(), Nat(n));
    try {
      try {
        detail::run_table_exact(prog.spec(), start, domain.bound, {});
      } catch (const OutOfSpace&) {
        detail::run_table_budget(prog.spec(), start, budget);
      }
    } catch (const WriteOnceViolation& e) {
      return {false, n, e.step(), "input " + std::to_string(n) + ", " + e.what()};
    }
  }
  return {};
}

// --- composition

struct ComposeReport {
  bool accepted = false;
  std::string reason;
  std::optional<std::uint64_t> certified_steps;  // max internal steps of the first stage, when accepted
  std::optional<std::uint64_t> witness_input;    // input that blocks the certificate, when rejected
};

inline constexpr std::string_view kExternalTimeReason = "output only stabilizes at external time";

namespace detail {

// Internal run of any program: Stopped, Cycle or Escaped. Write-once
// violations propagate.
inline Trajectory internal_run(const AtmProgram& prog, const Nat& input, SpaceBound bound,
                               const ExactLimits& limits = {}) {
  if (prog.kind() != AtmKind::Table) {
    const TmSpec spec = prog.simulated(input);
    return classify_sparse(spec, initial_config(spec, input), bound, limits);
  }
  const TmConfig start = atm_initial_config(prog.spec(), input);
  AtmMachine m(prog.spec(), region_for(start, bound));
  return classify(m, m.load(start), limits.max_steps);
}

}  // namespace detail

/// Decides whether `second` may consume the output of `first`.
///
/// The second stage needs the first stage's answer in finite internal time,
/// so the first stage must be certified to halt on every input of the domain,
/// each run confined to the domain's space bound. A proven infinite internal
/// run means the answer only exists at external time and the pipeline is
/// rejected with kExternalTimeReason; a run that leaves the bound cannot be
/// certified and also rejects. Both stages must respect write-once.
inline ComposeReport compose_check(const AtmProgram& first, const AtmProgram& second,
                                   const CompositionDomain& domain = {}) {
  for (const AtmProgram* p : {&first, &second}) {
    if (WriteOnceReport w = validate_write_once(*p, domain); !w.ok)
      return {false, "stage '" + p->name() + "' violates write-once: " + w.message, std::nullopt, w.input};
  }

  std::uint64_t max_steps = 0;
  std::optional<std::uint64_t> escaped;
  for (std::uint64_t n = 0; n <= domain.max_input; ++n) {
    const Trajectory t = detail::internal_run(first, Nat(n), domain.bound);
    if (std::holds_alternative<Cycle>(t)) return {false, std::string(kExternalTimeReason), std::nullopt, n};
    if (const auto* s = std::get_if<Stopped>(&t)) {
      // Simulating programs spend one more step writing the mark.
      const std::uint64_t steps = s->steps + (first.kind() == AtmKind::Table ? 0 : 1);
      max_steps = std::max(max_steps, steps);
    } else if (!escaped) {
      escaped = n;
    }
  }
  if (escaped)
    return {false, "first stage not certified finite: input " + std::to_string(*escaped) + " leaves the space bound",
            std::nullopt, escaped};
  return {true,
          "first stage halts within " + std::to_string(max_steps) + " internal steps on inputs 0.." +
              std::to_string(domain.max_input),
          max_steps, std::nullopt};
}

struct PipelineResult {
  AtmVerdict first;
  Nat intermediate;  // 1 iff the first stage marked
  AtmVerdict second;
};

/// Runs the composition as if it were allowed: both stages exact under
/// `bound`, the first stage's external answer fed to the second.
inline PipelineResult run_pipeline_forced(const AtmProgram& first, const AtmProgram& second, const Nat& input,
                                          SpaceBound bound) {
  AtmVerdict a = atm_run(first, input, 0, bound);
  Nat mid(is_marked(a) ? 1 : 0);
  AtmVerdict b = atm_run(second, mid, 0, bound);
  return {std::move(a), std::move(mid), std::move(b)};
}

/// Runs a composition only after compose_check accepts it.
inline PipelineResult run_pipeline(const AtmProgram& first, const AtmProgram& second, const Nat& input,
                                   const CompositionDomain& domain = {}) {
  const ComposeReport r = compose_check(first, second, domain);
  if (!r.accepted) throw PreconditionUnmet("composition rejected: " + r.reason);
  return run_pipeline_forced(first, second, input, domain.bound);
}

// --- internal halting

enum class AnswerTier { AcceleratingMachine, ExactDecider };

inline const char* tier_label(AnswerTier t) {
  return t == AnswerTier::AcceleratingMachine ? "accelerating-machine" : "exact-decider";
}

struct TieredAnswer {
  OracleAnswer answer;
  AnswerTier tier;
};

/// Whether the program's internal run halts. A halt is something the machine
/// witnesses itself in finitely many internal steps; a divergence proof can
/// only come from the exact decider one tier up, and is labelled so.
inline TieredAnswer internal_halt_query(const AtmProgram& prog, const Nat& input, SpaceBound bound,
                                        const ExactLimits& limits = {}) {
  OracleAnswer a = [&]() -> OracleAnswer {
    if (prog.kind() != AtmKind::Table) {
      const TmSpec spec = prog.simulated(input);
      return lba_halt_decide(spec, initial_config(spec, input), bound, limits);
    }
    return lba_halt_decide(prog.spec(), atm_initial_config(prog.spec(), input), bound, limits);
  }();
  const AnswerTier tier = std::holds_alternative<Halts>(a) ? AnswerTier::AcceleratingMachine : AnswerTier::ExactDecider;
  return {a, tier};
}

// ---------------------------------------------------------------------------
// Oracle machines: plain machines with a query state. Entering `query`, the
// machine asks whether plain machine x halts on x, where x is the number on
// the tape (ones - 1, or 0 on an empty tape). The exact decider under
// `oracle_bound` answers, and the next state is `yes` or `no`; the tape and
// head are unchanged. This costs one step.

struct OracleMachine {
  TmSpec spec;
  StateId query;
  StateId yes;
  StateId no;
  SpaceBound oracle_bound;
};

inline OracleMachine make_oracle_machine(TmSpec spec, std::string_view query, std::string_view yes,
                                         std::string_view no, SpaceBound oracle_bound) {
  auto q = spec.find_state(query), y = spec.find_state(yes), n = spec.find_state(no);
  if (!q || !y || !n) throw std::invalid_argument("oracle machine needs query, yes and no states");
  for (const Rule& r : spec.rules())
    if (r.state == *q) throw std::invalid_argument("the query state may not have rules of its own");
  return {std::move(spec), *q, *y, *n, oracle_bound};
}

/// The g machine: asks about its input; on "no" erases it and halts with 0,
/// on "yes" idles forever.
inline OracleMachine g_oracle_machine(SpaceBound oracle_bound) {
  return make_oracle_machine(parse_tm(catalog::kOracleG), "ask", "yes", "no", oracle_bound);
}

namespace detail {

class OracleSystem {
 public:
  using Config = SparseBoundedMachine::Config;

  OracleSystem(const OracleMachine& om, std::optional<Region> region) : om_(&om), region_(region) {}

  Advance advance(Config& c) const {
    TmConfig& cfg = c.cfg;
    if (cfg.state == om_->query) {
      const std::uint64_t ones = count_ones(cfg);
      const std::uint64_t x = ones == 0 ? 0 : ones - 1;
      cfg.state = ask(x) ? om_->yes : om_->no;
      ++cfg.steps;
      return Advance::Moved;
    }
    const Action* a = om_->spec.action(cfg.state, cfg.read(cfg.head));
    if (!a) return Advance::Stopped;
    const std::int64_t next = cfg.head + (a->move == Move::Left ? -1 : (a->move == Move::Right ? 1 : 0));
    if (region_ && !region_->contains(next)) return Advance::Escaped;
    diagforge::advance(om_->spec, cfg);
    return Advance::Moved;
  }

  bool halted(const TmConfig& cfg) const {
    return cfg.state != om_->query && om_->spec.action(cfg.state, cfg.read(cfg.head)) == nullptr;
  }

 private:
  bool ask(std::uint64_t x) const {
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    const OracleAnswer a = lba_halt_decide(GodelIndex(Nat(x)), Nat(x), om_->oracle_bound);
    const bool yes = std::holds_alternative<Halts>(a);
    memo_.emplace(x, yes);
    return yes;
  }

  const OracleMachine* om_;
  std::optional<Region> region_;
  mutable std::map<std::uint64_t, bool> memo_;
};

}  // namespace detail

/// Budgeted run of an oracle machine on input n (plain machine layout).
/// Oracle questions outside the oracle's space bound raise OutOfSpace.
inline RunOutcome run_oracle_machine(const OracleMachine& om, const Nat& input, std::uint64_t budget) {
  detail::OracleSystem sys(om, std::nullopt);
  detail::OracleSystem::Config c{initial_config(om.spec, input)};
  for (std::uint64_t i = 0; i < budget; ++i)
    if (sys.advance(c) == Advance::Stopped) return Halted{Nat(count_ones(c.cfg)), c.cfg.steps};
  if (sys.halted(c.cfg)) return Halted{Nat(count_ones(c.cfg)), c.cfg.steps};
  return Unknown{budget};
}

/// Exact halting for an oracle machine's own run confined to `bound`.
inline OracleAnswer oracle_machine_decide(const OracleMachine& om, const Nat& input, SpaceBound bound,
                                          const ExactLimits& limits = {}) {
  const TmConfig start = initial_config(om.spec, input);
  detail::OracleSystem sys(om, region_for(start, bound));
  const Trajectory t = classify(sys, detail::OracleSystem::Config{start}, limits.max_steps);
  if (const auto* s = std::get_if<Stopped>(&t)) return Halts{s->steps};
  if (const auto* c = std::get_if<Cycle>(&t)) return DivergesProven{c->start, c->length};
  const std::uint64_t escape = std::get<Escaped>(t).step;
  detail::OracleSystem probe(om, std::nullopt);
  detail::OracleSystem::Config c{start};
  for (std::uint64_t i = 0; i < escape; ++i) probe.advance(c);
  throw OutOfSpace(escape, c.cfg.head);
}

}  // namespace diagforge
