#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "diagforge/bounded.hpp"
#include "diagforge/cycle.hpp"
#include "diagforge/errors.hpp"
#include "diagforge/halting.hpp"
#include "diagforge/tm.hpp"
#include "diagforge/tm_numbering.hpp"

// Infinite time machines, below omega squared.
//
// Successor stages are ordinary steps. At a limit stage each cell takes its
// cofinal value: under Limsup a cell is 1 iff it was 1 cofinally often (for
// larger alphabets, the largest symbol seen cofinally), under Liminf the
// smallest. The head returns to cell 0 and the state becomes the machine's
// `limit:` state, or the start state when none is declared.
//
// Limits are only ever computed for runs confined to a space bound: there
// the orbit is eventually periodic, and the cofinal values are exactly the
// values seen on one period.
namespace diagforge {

/// omega * a + b.
struct OrdinalClock {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  OrdinalClock successor() const { return {a, b + 1}; }
  OrdinalClock next_limit() const { return {a + 1, 0}; }
  bool is_limit() const { return b == 0 && a > 0; }

  std::string str() const {
    if (a == 0) return std::to_string(b);
    std::string s = a == 1 ? "w" : "w*" + std::to_string(a);
    if (b > 0) s += "+" + std::to_string(b);
    return s;
  }

  friend auto operator<=>(const OrdinalClock&, const OrdinalClock&) = default;
  friend std::ostream& operator<<(std::ostream& os, const OrdinalClock& c) { return os << c.str(); }
};

inline constexpr std::uint64_t kDefaultOmegaCap = 4;

enum class LimitRule { Limsup, Liminf };

inline const char* rule_name(LimitRule r) { return r == LimitRule::Limsup ? "limsup" : "liminf"; }

/// One successor stage. A halted machine stays frozen, clock included.
inline std::pair<TmConfig, OrdinalClock> ittm_step(const TmSpec& spec, const TmConfig& cfg, OrdinalClock clock) {
  TmConfig next = cfg;
  if (!advance(spec, next)) return {cfg, clock};
  return {std::move(next), clock.successor()};
}

// The run halted after `steps` steps; the limit is the frozen configuration.
struct HaltedBeforeLimit {
  std::uint64_t steps;
  friend bool operator==(const HaltedBeforeLimit&, const HaltedBeforeLimit&) = default;
};

using LimitCertificate = std::variant<HaltedBeforeLimit, Cycle>;

struct LimitResult {
  TmConfig config;
  LimitCertificate certificate;
};

struct LimitUnknown {
  std::uint64_t escape_step;  // the run left the space bound at this step
};

using LimitOutcome = std::variant<LimitResult, LimitUnknown>;

namespace detail {

inline Symbol pick(LimitRule rule, Symbol lo, Symbol hi) { return rule == LimitRule::Limsup ? hi : lo; }

inline StateId limit_state_of(const TmSpec& spec) { return spec.limit_state().value_or(spec.start()); }

}  // namespace detail

/// The configuration at the first limit stage after `start`.
inline LimitOutcome limit_config(const TmSpec& spec, const TmConfig& start, const Region& region, LimitRule rule,
                                 const ExactLimits& limits = {}) {
  BoundedMachine m(spec, region);
  const auto origin = m.load(start);
  const Trajectory t = classify(m, origin, limits.max_steps);
  if (const auto* e = std::get_if<Escaped>(&t)) return LimitUnknown{e->step};
  if (const auto* s = std::get_if<Stopped>(&t)) {
    auto c = origin;
    for (std::uint64_t i = 0; i < s->steps; ++i) m.advance(c);
    return LimitResult{m.unload(c, start.steps + s->steps), HaltedBeforeLimit{s->steps}};
  }

  const Cycle cyc = std::get<Cycle>(t);
  auto c = origin;
  for (std::uint64_t i = 0; i < cyc.start; ++i) m.advance(c);
  std::vector<Symbol> lo = c.cells, hi = c.cells;
  for (std::uint64_t i = 0; i < cyc.length; ++i) {
    const std::size_t at = c.head;
    m.advance(c);
    lo[at] = std::min(lo[at], c.cells[at]);
    hi[at] = std::max(hi[at], c.cells[at]);
  }

  DenseConfig out;
  out.cells.assign(region.size(), kBlank);
  for (std::size_t i = 0; i < out.cells.size(); ++i) out.write(i, detail::pick(rule, lo[i], hi[i]));
  out.head = m.offset(0);
  out.state = detail::limit_state_of(spec);
  return LimitResult{m.unload(out, 0), cyc};
}

inline LimitOutcome limit_config(const TmSpec& spec, const TmConfig& start, SpaceBound bound, LimitRule rule,
                                 const ExactLimits& limits = {}) {
  return limit_config(spec, start, region_for(start, bound), rule, limits);
}

/// Recomputes a limit on the sparse simulator from its certificate and
/// compares: the cycle must close, and every cell's cofinal value must match.
inline bool verify_limit(const TmSpec& spec, const TmConfig& start, LimitRule rule, const LimitResult& r) {
  TmConfig cfg = start;
  if (const auto* h = std::get_if<HaltedBeforeLimit>(&r.certificate)) {
    for (std::uint64_t i = 0; i < h->steps; ++i)
      if (!advance(spec, cfg)) return false;
    return is_halted(spec, cfg) && cfg.same_state(r.config);
  }
  const Cycle& c = std::get<Cycle>(r.certificate);
  if (c.length == 0) return false;
  for (std::uint64_t i = 0; i < c.start; ++i)
    if (!advance(spec, cfg)) return false;
  const TmConfig mark = cfg;
  // cell -> (min, max) over the period; only the scanned cell can change.
  std::map<std::int64_t, std::pair<Symbol, Symbol>> seen;
  for (const auto& [cell, s] : cfg.tape) seen.emplace(cell, std::pair{s, s});
  for (std::uint64_t i = 0; i < c.length; ++i) {
    const std::int64_t at = cfg.head;
    if (!advance(spec, cfg)) return false;
    const Symbol s = cfg.read(at);
    auto it = seen.try_emplace(at, kBlank, kBlank).first;
    it->second = {std::min(it->second.first, s), std::max(it->second.second, s)};
  }
  if (!cfg.same_state(mark)) return false;

  TmConfig expect;
  for (const auto& [cell, mm] : seen) expect.write(cell, detail::pick(rule, mm.first, mm.second));
  expect.head = 0;
  expect.state = detail::limit_state_of(spec);
  return expect.same_state(r.config);
}

// --- transfinite runs

struct IttmHalted {
  TmConfig config;
  OrdinalClock clock;
};

struct IttmCapReached {
  OrdinalClock cap;
  TmConfig config;  // configuration at the cap
};

struct IttmOutOfBound {
  OrdinalClock clock;  // stage in which the run left the bound
};

using IttmOutcome = std::variant<IttmHalted, IttmCapReached, IttmOutOfBound>;

/// Runs through successive limit stages, up to omega * omega_cap.
inline IttmOutcome ittm_run(const TmSpec& spec, const TmConfig& start, SpaceBound bound, LimitRule rule,
                            std::uint64_t omega_cap = kDefaultOmegaCap, const ExactLimits& limits = {}) {
  const Region region = region_for(start, bound);
  TmConfig cfg = start;
  for (OrdinalClock clock{0, 0};; clock = clock.next_limit()) {
    if (clock.a >= omega_cap) return IttmCapReached{clock, cfg};
    LimitOutcome l = limit_config(spec, cfg, region, rule, limits);
    if (const auto* u = std::get_if<LimitUnknown>(&l)) return IttmOutOfBound{{clock.a, clock.b + u->escape_step}};
    auto& r = std::get<LimitResult>(l);
    if (const auto* h = std::get_if<HaltedBeforeLimit>(&r.certificate))
      return IttmHalted{std::move(r.config), {clock.a, h->steps}};
    cfg = std::move(r.config);
  }
}

// --- deciding plain machine halting at stage omega

enum class FlagProtocol {
  Settle,  // flag starts 0 and is set once when the simulation halts
  Blink,   // flag toggles every simulated step and settles when it halts
};

inline const char* protocol_name(FlagProtocol p) { return p == FlagProtocol::Settle ? "settle" : "blink"; }

// The flag value that means "halted" for a rule and protocol. Blinking reads
// as the rule's bias at the limit, so the halt value must be the other one.
inline Symbol halt_polarity(LimitRule rule, FlagProtocol p) {
  if (p == FlagProtocol::Settle) return kOne;
  return rule == LimitRule::Limsup ? kBlank : kOne;
}

namespace detail {

// Simulated machine plus the decider's flag cell.
class DeciderSystem {
 public:
  struct Config {
    DenseConfig sim;
    Symbol flag = kBlank;
    bool done = false;
    friend bool operator==(const Config&, const Config&) = default;
  };

  DeciderSystem(const TmSpec& spec, Region region, FlagProtocol p, Symbol halt_value)
      : sim_(spec, region), protocol_(p), halt_value_(halt_value) {}

  const BoundedMachine& sim() const { return sim_; }

  Advance advance(Config& c) const {
    if (c.done) return Advance::Stopped;
    const Advance r = sim_.advance(c.sim);
    if (r == Advance::Escaped) return r;
    if (r == Advance::Stopped) {
      c.flag = halt_value_;
      c.done = true;
    } else if (protocol_ == FlagProtocol::Blink) {
      c.flag = c.flag == kBlank ? kOne : kBlank;
    }
    return Advance::Moved;
  }

 private:
  BoundedMachine sim_;
  FlagProtocol protocol_;
  Symbol halt_value_;
};

static_assert(FiniteSystem<DeciderSystem>);

}  // namespace detail

struct IttmDecision {
  int value;           // 1 iff the simulated machine halts
  Symbol flag;         // flag cell as read by the decider
  OrdinalClock clock;  // stage at which it was read
  LimitCertificate certificate;
};

/// Decides whether plain machine x halts on x: simulate with a flag cell, and
/// read the flag at the end of the run or at stage omega.
inline IttmDecision ittm_decide_halting_detail(const GodelIndex& x, SpaceBound bound, LimitRule rule,
                                               FlagProtocol protocol = FlagProtocol::Settle,
                                               const ExactLimits& limits = {}) {
  const TmSpec spec = decode_tm(x);
  const TmConfig start = initial_config(spec, x.value);
  const Symbol halted = halt_polarity(rule, protocol);
  detail::DeciderSystem sys(spec, region_for(start, bound), protocol, halted);
  detail::DeciderSystem::Config origin{sys.sim().load(start), kBlank, false};
  const Trajectory t = classify(sys, origin, limits.max_steps);

  if (const auto* e = std::get_if<Escaped>(&t)) {
    TmConfig probe = start;
    for (std::uint64_t i = 0; i < e->step; ++i) advance(spec, probe);
    throw OutOfSpace(e->step, probe.head);
  }
  if (const auto* s = std::get_if<Stopped>(&t))
    return {1, halted, {0, s->steps}, HaltedBeforeLimit{s->steps}};

  const Cycle cyc = std::get<Cycle>(t);
  auto c = origin;
  for (std::uint64_t i = 0; i < cyc.start; ++i) sys.advance(c);
  Symbol lo = c.flag, hi = c.flag;
  for (std::uint64_t i = 0; i < cyc.length; ++i) {
    sys.advance(c);
    lo = std::min(lo, c.flag);
    hi = std::max(hi, c.flag);
  }
  const Symbol flag = detail::pick(rule, lo, hi);
  return {flag == halted ? 1 : 0, flag, {1, 0}, cyc};
}

inline int ittm_decide_halting(const GodelIndex& x, SpaceBound bound, LimitRule rule = LimitRule::Limsup,
                               FlagProtocol protocol = FlagProtocol::Settle) {
  return ittm_decide_halting_detail(x, bound, rule, protocol).value;
}

struct BiasReport {
  IttmDecision limsup;
  IttmDecision liminf;
  bool decisions_equal;
  bool flags_equal;  // raw flag cells; may differ under Blink
};

inline BiasReport bias_invariance_check(const GodelIndex& x, SpaceBound bound,
                                        FlagProtocol protocol = FlagProtocol::Blink) {
  IttmDecision sup = ittm_decide_halting_detail(x, bound, LimitRule::Limsup, protocol);
  IttmDecision inf = ittm_decide_halting_detail(x, bound, LimitRule::Liminf, protocol);
  const bool d = sup.value == inf.value, f = sup.flag == inf.flag;
  return {std::move(sup), std::move(inf), d, f};
}

}  // namespace diagforge
