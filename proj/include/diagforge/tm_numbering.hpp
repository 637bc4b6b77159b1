#pragma once

#include <string>
#include <vector>

#include "diagforge/index.hpp"
#include "diagforge/pairing.hpp"
#include "diagforge/tm.hpp"

// Numbering of machine specs.
//
// A canonical spec has states q0..q{Q-1} with q0 the start state, symbols
// "_", "1", s2..s{K-1}, no declared halt states and no limit state: halting is
// expressed purely by missing rules. The table is read as a Q*K digit number
// in base 3QK+1, cell (q, a) at position q*K + a (least significant first):
// digit 0 means no rule and digit 1 + ((q'*K + a')*3 + m) means
// "-> q' a' m" with m = L, R, S = 0, 1, 2.
//
// Shapes (Q, K) are visited in the order of pair(Q-1, K-2) = 0, 1, 2, ...,
// each contributing a block of (3QK+1)^(QK) consecutive indices. Index 0 is
// the one-state machine with an empty table.
namespace diagforge {

namespace tm_coding {

struct Shape {
  std::size_t states;
  std::size_t symbols;
};

inline Shape shape_at(const Nat& p) {
  auto [a, b] = coding::unpair(p);
  return {static_cast<std::size_t>(a.to_u64()) + 1, static_cast<std::size_t>(b.to_u64()) + 2};
}

inline Nat radix(const Shape& s) { return Nat(3 * s.states * s.symbols + 1); }

inline Nat block_size(const Shape& s) {
  Nat r = radix(s);
  Nat out = 1;
  for (std::size_t i = 0; i < s.states * s.symbols; ++i) out *= r;
  return out;
}

inline std::string state_label(std::size_t q) { return "q" + std::to_string(q); }

inline std::string symbol_label(std::size_t a) {
  return a == 0 ? "_" : (a == 1 ? "1" : "s" + std::to_string(a));
}

inline TmSpec make_canonical(const Shape& s, const std::vector<Rule>& rules) {
  std::vector<std::string> states, symbols;
  for (std::size_t q = 0; q < s.states; ++q) states.push_back(state_label(q));
  for (std::size_t a = 0; a < s.symbols; ++a) symbols.push_back(symbol_label(a));
  return TmSpec(std::move(states), std::move(symbols), 0, {}, rules);
}

}  // namespace tm_coding

/// Canonical form of a spec: start state first, halt states turned into
/// states without rules, "1" moved to symbol 1, names replaced by labels.
/// Runs of the canonical form match runs of the original step for step.
inline TmSpec canonicalize(const TmSpec& spec) {
  const std::size_t Q = spec.state_count();
  const std::size_t K = spec.symbol_count();
  std::vector<StateId> order;
  order.push_back(spec.start());
  for (StateId q = 0; q < Q; ++q)
    if (q != spec.start()) order.push_back(q);
  std::vector<StateId> renumber(Q);
  for (StateId i = 0; i < Q; ++i) renumber[order[i]] = i;

  std::vector<Rule> rules;
  for (const Rule& r : spec.rules()) {
    if (spec.is_halt_state(r.state)) continue;
    rules.push_back({renumber[r.state], r.read, Action{renumber[r.action.next], r.action.write, r.action.move}});
  }
  return tm_coding::make_canonical({Q, K}, rules);
}

inline GodelIndex encode_tm(const TmSpec& spec) {
  const TmSpec canon = canonicalize(spec);
  const tm_coding::Shape shape{canon.state_count(), canon.symbol_count()};
  const Nat p = coding::pair(Nat(shape.states - 1), Nat(shape.symbols - 2));

  Nat offset = 0;
  for (Nat i = 0; i < p; ++i) offset += tm_coding::block_size(tm_coding::shape_at(i));

  const Nat r = tm_coding::radix(shape);
  Nat digits = 0;
  for (std::size_t cell = shape.states * shape.symbols; cell-- > 0;) {
    const auto q = static_cast<StateId>(cell / shape.symbols);
    const auto a = static_cast<Symbol>(cell % shape.symbols);
    std::size_t digit = 0;
    if (const auto& e = canon.entry(q, a)) {
      digit = 1 + (e->next * shape.symbols + e->write) * 3 + static_cast<std::size_t>(e->move);
    }
    digits = digits * r + Nat(digit);
  }
  return GodelIndex(offset + digits);
}

inline TmSpec decode_tm(const GodelIndex& x) {
  Nat rest = x.value;
  Nat p = 0;
  tm_coding::Shape shape = tm_coding::shape_at(p);
  for (Nat size = tm_coding::block_size(shape); rest >= size; size = tm_coding::block_size(shape)) {
    rest -= size;
    ++p;
    shape = tm_coding::shape_at(p);
  }

  const Nat r = tm_coding::radix(shape);
  std::vector<Rule> rules;
  for (std::size_t cell = 0; cell < shape.states * shape.symbols; ++cell) {
    const std::size_t digit = static_cast<std::size_t>((rest % r).to_u64());
    rest /= r;
    if (digit == 0) continue;
    const std::size_t d = digit - 1;
    const auto move = static_cast<Move>(d % 3);
    const auto target = d / 3;
    rules.push_back({static_cast<StateId>(cell / shape.symbols), static_cast<Symbol>(cell % shape.symbols),
                     Action{static_cast<StateId>(target / shape.symbols),
                            static_cast<Symbol>(target % shape.symbols), move}});
  }
  return tm_coding::make_canonical(shape, rules);
}

}  // namespace diagforge
