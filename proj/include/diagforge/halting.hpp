#pragma once

#include <cstdint>
#include <variant>

#include "diagforge/bounded.hpp"
#include "diagforge/cycle.hpp"
#include "diagforge/index.hpp"
#include "diagforge/tm.hpp"
#include "diagforge/tm_numbering.hpp"

namespace diagforge {

struct Halts {
  std::uint64_t steps;
  friend bool operator==(const Halts&, const Halts&) = default;
};

// Certificate: config(cycle_start) == config(cycle_start + cycle_length).
struct DivergesProven {
  std::uint64_t cycle_start;
  std::uint64_t cycle_length;
  friend bool operator==(const DivergesProven&, const DivergesProven&) = default;
};

using OracleAnswer = std::variant<Halts, DivergesProven, Unknown>;

struct ExactLimits {
  std::uint64_t max_steps = 100'000'000;
};

// ---------------------------------------------------------------------------
// Semi-decision: run and watch. Sound for "halts", silent about divergence.

inline OracleAnswer semi_decide_halt(const TmSpec& spec, const TmConfig& start, std::uint64_t budget) {
  RunOutcome r = run_bounded(spec, start, budget);
  if (const auto* h = std::get_if<Halted>(&r)) return Halts{h->steps};
  return Unknown{budget};
}

inline OracleAnswer semi_decide_halt(const GodelIndex& x, const Nat& y, std::uint64_t budget) {
  const TmSpec spec = decode_tm(x);
  return semi_decide_halt(spec, initial_config(spec, y), budget);
}

// ---------------------------------------------------------------------------
// Exact decision on the space-bounded class.

struct ExactRun {
  Trajectory trajectory;
  Region region;
};

inline ExactRun run_exact(const TmSpec& spec, const TmConfig& start, SpaceBound bound,
                          const ExactLimits& limits = {}) {
  const Region region = region_for(start, bound);
  BoundedMachine machine(spec, region);
  return {classify(machine, machine.load(start), limits.max_steps), region};
}

/// Decides halting for a run confined to `bound`; throws OutOfSpace when the
/// head leaves the region. Never returns Unknown.
inline OracleAnswer lba_halt_decide(const TmSpec& spec, const TmConfig& start, SpaceBound bound,
                                    const ExactLimits& limits = {}) {
  ExactRun run = run_exact(spec, start, bound, limits);
  if (const auto* s = std::get_if<Stopped>(&run.trajectory)) return Halts{s->steps};
  if (const auto* c = std::get_if<Cycle>(&run.trajectory)) return DivergesProven{c->start, c->length};
  const auto& e = std::get<Escaped>(run.trajectory);
  // Recover where the head went for the error report.
  TmConfig probe = start;
  for (std::uint64_t i = 0; i < e.step; ++i) advance(spec, probe);
  throw OutOfSpace(e.step, probe.head);
}

inline OracleAnswer lba_halt_decide(const GodelIndex& x, const Nat& y, SpaceBound bound,
                                    const ExactLimits& limits = {}) {
  const TmSpec spec = decode_tm(x);
  return lba_halt_decide(spec, initial_config(spec, y), bound, limits);
}

// ---------------------------------------------------------------------------
// Certificate replay, on the sparse simulator (independent of the dense
// engine that produced the certificate).

inline bool replay_halts(const TmSpec& spec, TmConfig cfg, std::uint64_t steps) {
  for (std::uint64_t i = 0; i < steps; ++i)
    if (!advance(spec, cfg)) return false;
  return is_halted(spec, cfg);
}

inline bool replay_cycle(const TmSpec& spec, TmConfig cfg, const DivergesProven& cert) {
  if (cert.cycle_length == 0) return false;
  for (std::uint64_t i = 0; i < cert.cycle_start; ++i)
    if (!advance(spec, cfg)) return false;
  const TmConfig mark = cfg;
  for (std::uint64_t i = 0; i < cert.cycle_length; ++i)
    if (!advance(spec, cfg)) return false;
  return cfg.same_state(mark);
}

inline bool replay_answer(const TmSpec& spec, const TmConfig& start, const OracleAnswer& a) {
  if (const auto* h = std::get_if<Halts>(&a)) return replay_halts(spec, start, h->steps);
  if (const auto* d = std::get_if<DivergesProven>(&a)) return replay_cycle(spec, start, *d);
  return true;
}

// ---------------------------------------------------------------------------
// f(x, y) and g(x)

struct SemiTier {
  std::uint64_t budget;
};

struct ExactTier {
  SpaceBound bound;
};

using Tier = std::variant<SemiTier, ExactTier>;

enum class HaltValue { Diverges = 0, Halts = 1, Unknown = 2 };

inline HaltValue to_halt_value(const OracleAnswer& a) {
  if (std::holds_alternative<Halts>(a)) return HaltValue::Halts;
  if (std::holds_alternative<DivergesProven>(a)) return HaltValue::Diverges;
  return HaltValue::Unknown;
}

// f(x, y): 1 if machine x halts on y, 0 if it provably does not. The semi
// tier can only ever answer 1 or Unknown.
inline HaltValue halting_f(const GodelIndex& x, const Nat& y, const Tier& tier) {
  if (const auto* s = std::get_if<SemiTier>(&tier)) return to_halt_value(semi_decide_halt(x, y, s->budget));
  return to_halt_value(lba_halt_decide(x, y, std::get<ExactTier>(tier).bound));
}

// g(x) = 0 when machine x provably never halts on x.
struct GValue {
  Nat value;
  friend bool operator==(const GValue&, const GValue&) = default;
};

// Stand-in for the divergent branch of g: machine x halts on x, so g would
// loop. Reported, never executed.
struct DivergesMarker {
  std::uint64_t machine_halt_steps;
  friend bool operator==(const DivergesMarker&, const DivergesMarker&) = default;
};

using GResult = std::variant<GValue, DivergesMarker>;

inline GResult diagonal_g(const GodelIndex& x, SpaceBound bound, const ExactLimits& limits = {}) {
  OracleAnswer a = lba_halt_decide(x, x.value, bound, limits);
  if (const auto* h = std::get_if<Halts>(&a)) return DivergesMarker{h->steps};
  return GValue{Nat(0)};
}

}  // namespace diagforge
