#pragma once

#include <span>
#include <utility>
#include <vector>

#include "diagforge/nat.hpp"

// Bijective codings of tuples and lists of naturals, shared by the term and
// machine numberings.
namespace diagforge::coding {

// Cantor pairing, ordered so that pair(1, 0) == 1.
inline Nat pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return (s * (s + 1)) / 2 + b;
}

inline std::pair<Nat, Nat> unpair(const Nat& z) {
  Nat w = (isqrt(z * 8 + 1) - 1) / 2;
  Nat t = (w * (w + 1)) / 2;
  Nat b = z - t;
  Nat a = w - b;
  return {std::move(a), std::move(b)};
}

// Fixed-length tuples, m >= 1: <a> = a, <a, rest...> = pair(a, <rest...>).
inline Nat encode_tuple(std::span<const Nat> items) {
  if (items.empty()) throw std::invalid_argument("encode_tuple: empty tuple");
  Nat acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = pair(items[i], acc);
  return acc;
}

inline std::vector<Nat> decode_tuple(Nat z, std::size_t m) {
  if (m == 0) throw std::invalid_argument("decode_tuple: zero length");
  std::vector<Nat> out;
  out.reserve(m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    auto [head, tail] = unpair(z);
    out.push_back(std::move(head));
    z = std::move(tail);
  }
  out.push_back(std::move(z));
  return out;
}

// Nonempty lists of any length: [a] -> 2a, a :: rest -> 2 pair(a, <rest>) + 1.
// A list of length m has code >= 2^(m-1) - 1, so decoding a code never yields
// more than bit_length + 1 elements.
inline Nat encode_list(std::span<const Nat> items) {
  if (items.empty()) throw std::invalid_argument("encode_list: empty list");
  Nat acc = items.back() * 2;
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = pair(items[i], acc) * 2 + 1;
  return acc;
}

inline std::vector<Nat> decode_list(Nat z) {
  std::vector<Nat> out;
  while (z.is_odd()) {
    auto [head, tail] = unpair(z / 2);
    out.push_back(std::move(head));
    z = std::move(tail);
  }
  out.push_back(z / 2);
  return out;
}

}  // namespace diagforge::coding
