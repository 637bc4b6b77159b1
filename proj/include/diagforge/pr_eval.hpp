#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diagforge/errors.hpp"
#include "diagforge/nat.hpp"
#include "diagforge/pr_term.hpp"

namespace diagforge {

// Host-side caps for term evaluation. Exceeding either raises
// ResourceExhausted; primitive-recursive terms themselves never diverge.
struct EvalLimits {
  std::uint64_t max_steps = 10'000'000;
  std::size_t max_bits = 1'000'000;
};

struct EvalStats {
  std::uint64_t steps = 0;
};

namespace detail {

struct Budget {
  const EvalLimits& limits;
  EvalStats stats;

  void charge() {
    if (++stats.steps > limits.max_steps) {
      throw ResourceExhausted(ResourceExhausted::Limit::Steps, limits.max_steps,
                              "evaluation exceeded " + std::to_string(limits.max_steps) + " steps");
    }
  }

  void check_size(const Nat& v) const {
    if (v.bit_length() > limits.max_bits) {
      throw ResourceExhausted(ResourceExhausted::Limit::Bits, limits.max_bits,
                              "value exceeded " + std::to_string(limits.max_bits) + " bits");
    }
  }
};

}  // namespace detail

/// Evaluates `term` on `args` with an explicit work stack, so deeply nested
/// recursions never touch the host call stack. Each term application costs
/// one step against `limits.max_steps`.
inline Nat eval_pr(const PrTerm& term, std::span<const Nat> args, const EvalLimits& limits = {},
                   EvalStats* stats = nullptr) {
  if (args.size() != term.arity()) {
    throw std::invalid_argument("eval_pr: term " + term.to_string() + " has arity " +
                                std::to_string(term.arity()) + " but " +
                                std::to_string(args.size()) + " arguments were given");
  }

  struct Frame {
    const PrTerm* term;
    std::vector<Nat> args;
    std::size_t stage = 0;
    std::vector<Nat> acc;  // Comp: inner results so far
    Nat counter;           // PrimRec: recursion position
    std::optional<Nat> incoming;
  };

  detail::Budget budget{limits, {}};
  std::vector<Frame> stack;
  auto call = [&](const PrTerm& t, std::vector<Nat> a) {
    budget.charge();
    stack.push_back(Frame{&t, std::move(a), 0, {}, Nat(0), std::nullopt});
  };

  call(term, std::vector<Nat>(args.begin(), args.end()));
  Nat result;

  auto ret = [&](Nat v) {
    stack.pop_back();
    if (stack.empty()) {
      result = std::move(v);
    } else {
      stack.back().incoming = std::move(v);
    }
  };

  while (!stack.empty()) {
    Frame& f = stack.back();
    const PrTerm& t = *f.term;
    switch (t.kind()) {
      case PrKind::Zero:
        ret(Nat{});
        break;
      case PrKind::Succ: {
        Nat v = f.args[0] + 1;
        budget.check_size(v);
        ret(std::move(v));
        break;
      }
      case PrKind::Proj:
        ret(std::move(f.args[t.proj_index() - 1]));
        break;
      case PrKind::Comp: {
        if (f.incoming) {
          f.acc.push_back(std::move(*f.incoming));
          f.incoming.reset();
        }
        if (f.acc.size() < t.inner_count()) {
          const PrTerm& g = t.inner(f.acc.size());
          call(g, f.args);  // `f` may dangle after this
        } else {
          // Tail call: the outer term replaces this frame.
          budget.charge();
          f.term = &t.outer();
          f.args = std::move(f.acc);
          f.acc = {};
        }
        break;
      }
      case PrKind::PrimRec: {
        if (f.stage == 0) {
          f.stage = 1;
          call(t.base(), std::vector<Nat>(f.args.begin() + 1, f.args.end()));
          break;
        }
        // f.incoming holds R(counter, xs)
        if (f.counter == f.args[0]) {
          Nat v = std::move(*f.incoming);
          ret(std::move(v));
          break;
        }
        std::vector<Nat> step_args;
        step_args.reserve(f.args.size() + 1);
        step_args.push_back(f.counter);
        step_args.push_back(std::move(*f.incoming));
        step_args.insert(step_args.end(), f.args.begin() + 1, f.args.end());
        f.incoming.reset();
        ++f.counter;
        call(t.step(), std::move(step_args));
        break;
      }
    }
  }

  if (stats) *stats = budget.stats;
  return result;
}

inline Nat eval_pr(const PrTerm& term, std::initializer_list<Nat> args,
                   const EvalLimits& limits = {}) {
  return eval_pr(term, std::span<const Nat>(args.begin(), args.size()), limits);
}

}  // namespace diagforge
