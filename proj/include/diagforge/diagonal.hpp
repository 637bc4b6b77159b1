#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "diagforge/errors.hpp"
#include "diagforge/godel.hpp"
#include "diagforge/halting.hpp"
#include "diagforge/nat.hpp"
#include "diagforge/pr_eval.hpp"

// The generalized diagonal j over a class of machines computing X -> Y:
//
//   j(x) = y0        if x is not in the index set I, or machine x diverges on x
//   j(x) = k(v)      if machine x returns v on x
//
// where k has no fixed point on Y (a divergent k(y) counts as different from
// y). Evaluating machine x on x goes through the class's own,
// possibly tiered, self-application procedure, which may be undecided.
namespace diagforge {

template <class T>
struct ValueSpace {
  std::string name;
  std::function<bool(const T&)> contains;
  std::optional<std::vector<T>> elements;  // set for finite spaces
  std::function<std::vector<T>(std::uint64_t seed, std::size_t count)> sample;  // for infinite spaces

  bool finite() const { return elements.has_value(); }
};

inline ValueSpace<Nat> naturals() {
  ValueSpace<Nat> s;
  s.name = "N";
  s.contains = [](const Nat&) { return true; };
  // Small values exhaustively from 0, then random values of up to 256 bits.
  s.sample = [](std::uint64_t seed, std::size_t count) {
    std::vector<Nat> out;
    const std::size_t small = count / 2;
    for (std::size_t i = 0; i < small; ++i) out.emplace_back(i);
    std::mt19937_64 rng(seed);
    for (std::size_t i = small; i < count; ++i) {
      Nat v = 0;
      const std::size_t limbs = 1 + rng() % 4;
      for (std::size_t l = 0; l < limbs; ++l) v = (v << 64) + Nat(rng());
      out.push_back(std::move(v));
    }
    return out;
  };
  return s;
}

inline ValueSpace<std::uint64_t> finite_range(std::uint64_t size) {
  ValueSpace<std::uint64_t> s;
  s.name = "{0.." + std::to_string(size - 1) + "}";
  s.contains = [size](const std::uint64_t& v) { return v < size; };
  std::vector<std::uint64_t> all(size);
  for (std::uint64_t i = 0; i < size; ++i) all[i] = i;
  s.elements = std::move(all);
  return s;
}

// --- self-application outcomes

template <class Y>
struct Returned {
  Y value;
};

struct Diverged {
  std::string certificate;
};

struct Undecided {
  std::string reason;
};

template <class Y>
using SelfApplication = std::variant<Returned<Y>, Diverged, Undecided>;

template <class X, class Y>
struct JSpec {
  std::string name;
  ValueSpace<X> domain;
  ValueSpace<Y> codomain;
  std::function<bool(const X&)> in_index_set;
  Y y0;
  std::function<std::optional<Y>(const Y&)> k;  // nullopt: k diverges at this point
  std::function<SelfApplication<Y>(const X&)> evaluator;
  std::size_t k_samples = 1000;  // sample size when Y is infinite
  std::uint64_t seed = 1;
};

// --- results

template <class Y>
struct JValue {
  Y value;
};

struct JDiverges {
  std::string reason;
};

struct JUnknown {
  std::string reason;
};

template <class Y>
using JResult = std::variant<JValue<Y>, JDiverges, JUnknown>;

struct KCheck {
  bool exhaustive = false;
  std::size_t checked = 0;
  std::string residual_obligation;  // what remains unverified, empty when exhaustive
};

template <class X, class Y>
class DiagonalProcedure {
 public:
  DiagonalProcedure(JSpec<X, Y> spec, KCheck check) : spec_(std::move(spec)), check_(std::move(check)) {}

  const JSpec<X, Y>& spec() const { return spec_; }
  const KCheck& k_check() const { return check_; }

  JResult<Y> operator()(const X& x) const {
    if (!spec_.domain.contains(x)) throw std::invalid_argument("argument outside the domain " + spec_.domain.name);
    if (!spec_.in_index_set(x)) return JValue<Y>{spec_.y0};
    SelfApplication<Y> s = spec_.evaluator(x);
    if (std::holds_alternative<Diverged>(s)) return JValue<Y>{spec_.y0};
    if (const auto* u = std::get_if<Undecided>(&s)) return JUnknown{u->reason};
    std::optional<Y> out = spec_.k(std::get<Returned<Y>>(s).value);
    if (!out) return JDiverges{"k diverges at the self-application value"};
    return JValue<Y>{std::move(*out)};
  }

 private:
  JSpec<X, Y> spec_;
  KCheck check_;
};

/// Validates a recipe and returns its diagonal. k is checked for fixed points
/// on all of Y when Y is finite, otherwise on a deterministic sample, with
/// the rest of Y recorded as an open obligation.
template <class X, class Y>
DiagonalProcedure<X, Y> build_j(JSpec<X, Y> spec) {
  if (!spec.codomain.contains(spec.y0)) throw JSpecRejected(spec.name + ": y0 is not in " + spec.codomain.name);
  if (!spec.k || !spec.evaluator || !spec.in_index_set) throw JSpecRejected(spec.name + ": incomplete recipe");

  KCheck check;
  std::vector<Y> points;
  if (spec.codomain.finite()) {
    points = *spec.codomain.elements;
    check.exhaustive = true;
  } else {
    if (!spec.codomain.sample) throw JSpecRejected(spec.name + ": infinite codomain without a sampler");
    points = spec.codomain.sample(spec.seed, spec.k_samples);
  }
  for (const Y& y : points) {
    std::optional<Y> ky = spec.k(y);
    if (ky && *ky == y) throw JSpecRejected(spec.name + ": k has a fixed point");
    if (ky && !spec.codomain.contains(*ky)) throw JSpecRejected(spec.name + ": k leaves " + spec.codomain.name);
  }
  check.checked = points.size();
  if (!check.exhaustive)
    check.residual_obligation =
        "k(y) != y verified on " + std::to_string(points.size()) + " sampled points of " + spec.codomain.name;
  return DiagonalProcedure<X, Y>(std::move(spec), std::move(check));
}

// --- the two classic instances

/// g over the space-bounded machine class: y0 = 0 and k diverges everywhere,
/// so j(x) = 0 when machine x diverges on x and j diverges when it halts.
inline JSpec<Nat, Nat> instantiate_g_as_j(SpaceBound bound, const ExactLimits& limits = {}) {
  JSpec<Nat, Nat> s;
  s.name = "g";
  s.domain = naturals();
  s.codomain = naturals();
  s.in_index_set = [](const Nat&) { return true; };  // every natural numbers a machine
  s.y0 = Nat(0);
  s.k = [](const Nat&) -> std::optional<Nat> { return std::nullopt; };
  s.evaluator = [bound, limits](const Nat& x) -> SelfApplication<Nat> {
    const TmSpec spec = decode_tm(GodelIndex(x));
    const TmConfig start = initial_config(spec, x);
    try {
      const OracleAnswer a = lba_halt_decide(spec, start, bound, limits);
      if (const auto* h = std::get_if<Halts>(&a)) {
        const RunOutcome r = run_bounded(spec, start, h->steps);
        return Returned<Nat>{std::get<Halted>(r).output};
      }
      const auto& d = std::get<DivergesProven>(a);
      return Diverged{"cycle from step " + std::to_string(d.cycle_start) + ", length " +
                      std::to_string(d.cycle_length)};
    } catch (const OutOfSpace& e) {
      return Undecided{e.what()};
    }
  };
  return s;
}

/// h over primitive recursive terms: k = successor. Terms are total, so the
/// divergence branch is unreachable and y0 is never used.
inline JSpec<Nat, Nat> instantiate_h_as_j(const EvalLimits& limits = {}) {
  JSpec<Nat, Nat> s;
  s.name = "h";
  s.domain = naturals();
  s.codomain = naturals();
  s.in_index_set = [](const Nat&) { return true; };
  s.y0 = Nat(0);
  s.k = [](const Nat& y) -> std::optional<Nat> { return y + Nat(1); };
  s.evaluator = [limits](const Nat& x) -> SelfApplication<Nat> {
    try {
      return Returned<Nat>{universal_pr_eval(GodelIndex(x), x, limits)};
    } catch (const ResourceExhausted& e) {
      return Undecided{e.what()};
    }
  };
  return s;
}

}  // namespace diagforge
