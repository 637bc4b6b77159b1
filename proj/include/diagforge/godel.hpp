#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "diagforge/index.hpp"
#include "diagforge/pairing.hpp"
#include "diagforge/pr_eval.hpp"
#include "diagforge/pr_term.hpp"

// Numbering of primitive-recursive terms.
//
// Terms are numbered per arity first. Within arity n, a term gets a code e:
//
//   n = 1:  Z -> 0, S -> 1, P[1,1] -> 2, C[...] -> 3 + payload
//   n >= 2: P[i,n] -> i-1, C[...] -> n + 2 payload, R[...] -> n + 2 payload + 1
//
//   C[f; g1..gm] payload = pair(e(f), list(e(g1), ..., e(gm)))   (f in arity m)
//   R[b; s]      payload = pair(e(b), e(s))                     (arities n-1, n+1)
//
// The global index then folds in the arity: indices 0 and 1 are (1, 0) and
// (1, 1); every index z >= 2 has z - 1 = 2^(n-1) (2u + 1), with e = u for
// n >= 2 and e = u + 2 for n = 1. Arity grows with the bit length of the
// index, never with its magnitude, so decoding any natural stays cheap.
namespace diagforge {

namespace pr_coding {

// (arity, code within arity)
struct Ref {
  std::size_t arity;
  Nat code;

  friend bool operator==(const Ref&, const Ref&) = default;
  friend bool operator<(const Ref& a, const Ref& b) {
    if (a.arity != b.arity) return a.arity < b.arity;
    return a.code < b.code;
  }
};

// One constructor's worth of a decoded code.
struct Layer {
  PrKind kind;
  std::size_t arity;
  std::size_t proj_index = 0;
  std::vector<Ref> children;  // Comp: outer then inners; PrimRec: base, step
};

inline Layer decode_layer(const Ref& ref) {
  const std::size_t n = ref.arity;
  const Nat& e = ref.code;
  if (n == 1) {
    if (e == Nat(0)) return {PrKind::Zero, 1, 0, {}};
    if (e == Nat(1)) return {PrKind::Succ, 1, 0, {}};
    if (e == Nat(2)) return {PrKind::Proj, 1, 1, {}};
  } else if (e < Nat(n)) {
    return {PrKind::Proj, n, static_cast<std::size_t>(e.to_u64()) + 1, {}};
  }

  Nat rest = n == 1 ? e - 3 : e - Nat(n);
  const bool primrec = n != 1 && rest.is_odd();
  if (n != 1) rest >>= 1;
  auto [left, right] = coding::unpair(rest);
  if (primrec) {
    return {PrKind::PrimRec, n, 0, {Ref{n - 1, std::move(left)}, Ref{n + 1, std::move(right)}}};
  }
  std::vector<Nat> inner_codes = coding::decode_list(std::move(right));
  Layer layer{PrKind::Comp, n, 0, {}};
  layer.children.reserve(inner_codes.size() + 1);
  layer.children.push_back(Ref{inner_codes.size(), std::move(left)});
  for (auto& c : inner_codes) layer.children.push_back(Ref{n, std::move(c)});
  return layer;
}

inline Nat encode_in_arity(const PrTerm& t) {
  const std::size_t n = t.arity();
  switch (t.kind()) {
    case PrKind::Zero: return Nat(0);
    case PrKind::Succ: return Nat(1);
    case PrKind::Proj: return n == 1 ? Nat(2) : Nat(t.proj_index() - 1);
    case PrKind::Comp: {
      std::vector<Nat> inner_codes;
      inner_codes.reserve(t.inner_count());
      for (std::size_t i = 0; i < t.inner_count(); ++i)
        inner_codes.push_back(encode_in_arity(t.inner(i)));
      Nat payload = coding::pair(encode_in_arity(t.outer()), coding::encode_list(inner_codes));
      return n == 1 ? payload + 3 : payload * 2 + Nat(n);
    }
    case PrKind::PrimRec: {
      Nat payload = coding::pair(encode_in_arity(t.base()), encode_in_arity(t.step()));
      return payload * 2 + Nat(n) + 1;
    }
  }
  return {};
}

inline Ref split_index(const Nat& x) {
  if (x < Nat(2)) return {1, x};
  Nat z = x - 1;
  const std::size_t t = trailing_zeros(z);
  Nat u = (z >> static_cast<unsigned>(t)) >> 1;
  const std::size_t n = t + 1;
  return {n, n == 1 ? u + 2 : std::move(u)};
}

inline Nat join_index(const Ref& ref) {
  if (ref.arity == 1 && ref.code < Nat(2)) return ref.code;
  Nat u = ref.arity == 1 ? ref.code - 2 : ref.code;
  Nat z = (u * 2 + 1) << static_cast<unsigned>(ref.arity - 1);
  return z + 1;
}

inline PrTerm build(const Ref& ref) {
  Layer layer = decode_layer(ref);
  switch (layer.kind) {
    case PrKind::Zero: return PrTerm::zero();
    case PrKind::Succ: return PrTerm::succ();
    case PrKind::Proj: return PrTerm::proj(layer.proj_index, layer.arity);
    case PrKind::Comp: {
      std::vector<PrTerm> inners;
      inners.reserve(layer.children.size() - 1);
      for (std::size_t i = 1; i < layer.children.size(); ++i) inners.push_back(build(layer.children[i]));
      return PrTerm::comp(build(layer.children[0]), std::move(inners));
    }
    case PrKind::PrimRec:
      return PrTerm::prim_rec(build(layer.children[0]), build(layer.children[1]));
  }
  throw std::logic_error("unreachable");
}

}  // namespace pr_coding

inline GodelIndex encode_term(const PrTerm& term) {
  return GodelIndex(pr_coding::join_index({term.arity(), pr_coding::encode_in_arity(term)}));
}

inline PrTerm decode_index(const GodelIndex& x) {
  return pr_coding::build(pr_coding::split_index(x.value));
}

// Unary reading of an arity-n term: arg followed by n-1 zeros.
inline std::vector<Nat> coerce_unary(const Nat& arg, std::size_t arity) {
  std::vector<Nat> args(arity);
  args[0] = arg;
  return args;
}

/// psi_x(arg) computed straight from the index: each frame decodes only the
/// constructor it is about to apply (memoized per call), and no PrTerm is ever
/// built. This is the universal evaluator that lives outside the
/// primitive-recursive class; `eval_pr(decode_index(x), ...)` is the
/// independent route it is checked against.
inline Nat universal_pr_eval(const GodelIndex& x, const Nat& arg, const EvalLimits& limits = {},
                             EvalStats* stats = nullptr) {
  using pr_coding::Layer;
  using pr_coding::Ref;

  std::map<Ref, std::shared_ptr<const Layer>> layers;
  auto layer_of = [&](const Ref& r) -> const Layer& {
    auto it = layers.find(r);
    if (it == layers.end())
      it = layers.emplace(r, std::make_shared<const Layer>(pr_coding::decode_layer(r))).first;
    return *it->second;
  };

  struct Frame {
    const Layer* layer;
    std::vector<Nat> args;
    std::vector<Nat> done;
    bool base_done = false;
    Nat counter;
    std::optional<Nat> incoming;
  };

  detail::Budget budget{limits, {}};
  std::vector<Frame> stack;
  auto call = [&](const Ref& r, std::vector<Nat> a) {
    budget.charge();
    const Layer& l = layer_of(r);
    stack.push_back(Frame{&l, std::move(a), {}, false, Nat(0), std::nullopt});
  };

  const Ref root = pr_coding::split_index(x.value);
  call(root, coerce_unary(arg, root.arity));

  Nat result;
  auto finish = [&](Nat v) {
    stack.pop_back();
    if (stack.empty())
      result = std::move(v);
    else
      stack.back().incoming = std::move(v);
  };

  while (!stack.empty()) {
    Frame& f = stack.back();
    const Layer& l = *f.layer;
    if (l.kind == PrKind::Zero) {
      finish(Nat{});
    } else if (l.kind == PrKind::Succ) {
      Nat v = f.args.front() + 1;
      budget.check_size(v);
      finish(std::move(v));
    } else if (l.kind == PrKind::Proj) {
      finish(std::move(f.args[l.proj_index - 1]));
    } else if (l.kind == PrKind::Comp) {
      if (f.incoming) {
        f.done.push_back(std::move(*f.incoming));
        f.incoming.reset();
      }
      const std::size_t m = l.children.size() - 1;
      if (f.done.size() < m) {
        Ref next = l.children[f.done.size() + 1];
        call(next, f.args);
      } else {
        Ref outer = l.children[0];
        std::vector<Nat> outer_args = std::move(f.done);
        stack.pop_back();
        call(outer, std::move(outer_args));
      }
    } else {  // PrimRec
      if (!f.base_done) {
        f.base_done = true;
        Ref base = l.children[0];
        call(base, std::vector<Nat>(f.args.begin() + 1, f.args.end()));
        continue;
      }
      if (f.counter == f.args[0]) {
        Nat v = std::move(*f.incoming);
        finish(std::move(v));
        continue;
      }
      std::vector<Nat> step_args;
      step_args.reserve(f.args.size() + 1);
      step_args.push_back(f.counter);
      step_args.push_back(std::move(*f.incoming));
      step_args.insert(step_args.end(), f.args.begin() + 1, f.args.end());
      f.incoming.reset();
      ++f.counter;
      Ref step = l.children[1];
      call(step, std::move(step_args));
    }
  }

  if (stats) *stats = budget.stats;
  return result;
}

// h(x) = psi_x(x) + 1
inline Nat diagonal_h(const GodelIndex& x, const EvalLimits& limits = {}) {
  return universal_pr_eval(x, x.value, limits) + 1;
}

}  // namespace diagforge
