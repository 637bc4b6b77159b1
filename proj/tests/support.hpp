#pragma once

// Generators and reference implementations shared by the unit tests. The
// references are deliberately naive (host recursion, visited sets) so they
// share no code paths with the library engines they check.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "diagforge/diagforge.hpp"

namespace testsupport {

using namespace diagforge;

inline std::mt19937_64& rng_for(std::uint64_t seed) {
  thread_local std::mt19937_64 rng;
  rng.seed(seed);
  return rng;
}

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline Nat random_nat(std::mt19937_64& rng, unsigned max_bits) {
  const unsigned bits = static_cast<unsigned>(uniform(rng, 0, max_bits));
  Nat n = 0;
  for (unsigned i = 0; i < bits; ++i) n = n * 2 + Nat(uniform(rng, 0, 1));
  return n;
}

// Random well-formed term of the given arity with depth at most `depth`.
inline PrTerm random_term(std::mt19937_64& rng, std::size_t arity, int depth) {
  const bool leaf = depth <= 1 || uniform(rng, 0, 2) == 0;
  if (leaf) {
    if (arity == 1) {
      switch (uniform(rng, 0, 2)) {
        case 0: return PrTerm::zero();
        case 1: return PrTerm::succ();
        default: return PrTerm::proj(1, 1);
      }
    }
    return PrTerm::proj(uniform(rng, 1, arity), arity);
  }
  if (arity >= 2 && uniform(rng, 0, 1) == 0) {
    PrTerm base = random_term(rng, arity - 1, depth - 1);
    PrTerm step = random_term(rng, arity + 1, depth - 1);
    return PrTerm::prim_rec(std::move(base), std::move(step));
  }
  const std::size_t m = uniform(rng, 1, 3);
  PrTerm outer = random_term(rng, m, depth - 1);
  std::vector<PrTerm> inners;
  for (std::size_t i = 0; i < m; ++i) inners.push_back(random_term(rng, arity, depth - 1));
  return PrTerm::comp(std::move(outer), std::move(inners));
}

// Direct recursive evaluation; fine for the small values tests use.
inline Nat ref_eval(const PrTerm& t, const std::vector<Nat>& a) {
  switch (t.kind()) {
    case PrKind::Zero: return 0;
    case PrKind::Succ: return a[0] + Nat(1);
    case PrKind::Proj: return a[t.proj_index() - 1];
    case PrKind::Comp: {
      std::vector<Nat> mid;
      for (std::size_t i = 0; i < t.inner_count(); ++i) mid.push_back(ref_eval(t.inner(i), a));
      return ref_eval(t.outer(), mid);
    }
    case PrKind::PrimRec: {
      std::vector<Nat> rest(a.begin() + 1, a.end());
      Nat acc = ref_eval(t.base(), rest);
      for (Nat i = 0; i < a[0]; ++i) {
        std::vector<Nat> s{i, acc};
        s.insert(s.end(), rest.begin(), rest.end());
        acc = ref_eval(t.step(), s);
      }
      return acc;
    }
  }
  return 0;
}

// Random spec with 1..max_states states over {_, 1} (plus an optional extra
// symbol); each table cell is empty with probability 1/(holes+1).
inline TmSpec random_tm(std::mt19937_64& rng, std::size_t max_states = 3, bool extra_symbol = false,
                        unsigned holes = 4) {
  const std::size_t q = uniform(rng, 1, max_states);
  const std::size_t k = extra_symbol ? uniform(rng, 2, 3) : 2;
  std::vector<std::string> states, symbols;
  for (std::size_t i = 0; i < q; ++i) states.push_back("q" + std::to_string(i));
  for (std::size_t a = 0; a < k; ++a) symbols.push_back(a == 0 ? "_" : (a == 1 ? "1" : "x"));
  std::vector<Rule> rules;
  for (StateId s = 0; s < q; ++s)
    for (Symbol a = 0; a < k; ++a) {
      if (uniform(rng, 0, holes) == 0) continue;
      rules.push_back({s, a,
                       Action{static_cast<StateId>(uniform(rng, 0, q - 1)), static_cast<Symbol>(uniform(rng, 0, k - 1)),
                              static_cast<Move>(uniform(rng, 0, 2))}});
    }
  return TmSpec(states, symbols, 0, {}, rules);
}

enum class RefAnswer { Halts, Diverges, OutOfSpace };

struct RefRun {
  RefAnswer answer;
  std::uint64_t steps;  // halting step, or the step at which the head left
  std::uint64_t output;
};

// Exhaustive simulation inside `region` with a visited set of full
// configurations. Independent of the dense engine and Brent's algorithm.
inline RefRun ref_bounded(const TmSpec& spec, TmConfig c, Region region) {
  using Key = std::tuple<StateId, std::int64_t, std::map<std::int64_t, Symbol>>;
  std::set<Key> seen;
  std::uint64_t t = 0;
  for (;;) {
    if (!seen.insert({c.state, c.head, c.tape}).second) return {RefAnswer::Diverges, t, 0};
    const Action* a = spec.action(c.state, c.read(c.head));
    if (!a) return {RefAnswer::Halts, t, count_ones(c)};
    c.write(c.head, a->write);
    c.state = a->next;
    if (a->move == Move::Left) --c.head;
    if (a->move == Move::Right) ++c.head;
    ++t;
    if (!region.contains(c.head)) return {RefAnswer::OutOfSpace, t, 0};
  }
}

}  // namespace testsupport
