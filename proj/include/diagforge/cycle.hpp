#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <variant>

#include "diagforge/errors.hpp"

namespace diagforge {

enum class Advance { Moved, Stopped, Escaped };

// The system reached a configuration with no successor after `steps` moves.
struct Stopped {
  std::uint64_t steps;
  friend bool operator==(const Stopped&, const Stopped&) = default;
};

// config(start) == config(start + length), with start and length minimal.
struct Cycle {
  std::uint64_t start;
  std::uint64_t length;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

// Move number `step` (1-based) would have left the system's finite world.
struct Escaped {
  std::uint64_t step;
  friend bool operator==(const Escaped&, const Escaped&) = default;
};

using Trajectory = std::variant<Stopped, Cycle, Escaped>;

/// A deterministic system over a finite configuration space. `advance`
/// applies one move in place; configurations compare by value.
template <class S>
concept FiniteSystem = requires(const S& sys, typename S::Config& c) {
  { sys.advance(c) } -> std::same_as<Advance>;
  { c == c } -> std::convertible_to<bool>;
};

/// Classifies the orbit of `start` exactly: it stops, escapes, or enters a
/// cycle. Cycles are found with Brent's algorithm, so memory stays at two
/// configurations regardless of orbit length. `max_steps` bounds host work
/// and raises ResourceExhausted; it never turns into a divergence claim.
template <FiniteSystem S>
Trajectory classify(const S& sys, const typename S::Config& start, std::uint64_t max_steps) {
  using Config = typename S::Config;
  Config tortoise = start;
  Config hare = start;
  std::uint64_t t = 0;
  std::uint64_t power = 1;
  std::uint64_t lambda = 0;

  for (;;) {
    const Advance r = sys.advance(hare);
    if (r == Advance::Stopped) return Stopped{t};
    if (r == Advance::Escaped) return Escaped{t + 1};
    ++t;
    ++lambda;
    if (hare == tortoise) break;
    if (lambda == power) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    if (t > max_steps) {
      throw ResourceExhausted(ResourceExhausted::Limit::Steps, max_steps,
                              "cycle detection exceeded " + std::to_string(max_steps) + " steps");
    }
  }

  // Cycle length is lambda; find the first configuration on the cycle.
  tortoise = start;
  hare = start;
  for (std::uint64_t i = 0; i < lambda; ++i) sys.advance(hare);
  std::uint64_t mu = 0;
  while (!(tortoise == hare)) {
    sys.advance(tortoise);
    sys.advance(hare);
    ++mu;
  }
  return Cycle{mu, lambda};
}

}  // namespace diagforge
