#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace diagforge {

/// Arbitrary-precision natural number.
///
/// Thin wrapper over boost's signed cpp_int that keeps the value non-negative:
/// subtraction below zero throws std::domain_error instead of wrapping, and
/// construction from a negative integer is rejected. Use `monus` for
/// truncated subtraction.
class Nat {
 public:
  using Rep = boost::multiprecision::cpp_int;

  Nat() = default;

  template <std::integral I>
  Nat(I value) : rep_(value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      if (value < 0) throw std::domain_error("natural number cannot be negative");
    }
  }

  explicit Nat(Rep rep) : rep_(std::move(rep)) {
    if (rep_.sign() < 0) throw std::domain_error("natural number cannot be negative");
  }

  // Decimal digits only; no sign, no whitespace.
  static Nat parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty natural number");
    for (char c : text) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("not a natural number: " + std::string(text));
    }
    return Nat(Rep(std::string(text)));
  }

  const Rep& rep() const noexcept { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_odd() const { return bit_test(rep_, 0); }

  // Number of significant bits; 0 for zero.
  std::size_t bit_length() const {
    return rep_.is_zero() ? 0 : boost::multiprecision::msb(rep_) + 1;
  }

  bool fits_u64() const { return bit_length() <= 64; }

  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("natural does not fit in 64 bits: " + str());
    return rep_.convert_to<std::uint64_t>();
  }

  std::string str() const { return rep_.str(); }

  Nat& operator+=(const Nat& o) { rep_ += o.rep_; return *this; }
  Nat& operator*=(const Nat& o) { rep_ *= o.rep_; return *this; }
  Nat& operator/=(const Nat& o) { rep_ /= o.rep_; return *this; }
  Nat& operator%=(const Nat& o) { rep_ %= o.rep_; return *this; }
  Nat& operator-=(const Nat& o) {
    if (rep_ < o.rep_) throw std::domain_error("natural subtraction below zero");
    rep_ -= o.rep_;
    return *this;
  }
  Nat& operator++() { ++rep_; return *this; }
  Nat& operator<<=(unsigned n) { rep_ <<= n; return *this; }
  Nat& operator>>=(unsigned n) { rep_ >>= n; return *this; }

  friend Nat operator+(Nat a, const Nat& b) { return a += b; }
  friend Nat operator-(Nat a, const Nat& b) { return a -= b; }
  friend Nat operator*(Nat a, const Nat& b) { return a *= b; }
  friend Nat operator/(Nat a, const Nat& b) { return a /= b; }
  friend Nat operator%(Nat a, const Nat& b) { return a %= b; }
  friend Nat operator<<(Nat a, unsigned n) { return a <<= n; }
  friend Nat operator>>(Nat a, unsigned n) { return a >>= n; }

  friend bool operator==(const Nat& a, const Nat& b) { return a.rep_ == b.rep_; }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    int c = a.rep_.compare(b.rep_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.rep_; }

  // floor(sqrt(n))
  friend Nat isqrt(const Nat& n) { return Nat(Rep(boost::multiprecision::sqrt(n.rep_))); }

  // Count of trailing zero bits; n must be non-zero.
  friend std::size_t trailing_zeros(const Nat& n) {
    return boost::multiprecision::lsb(n.rep_);
  }

 private:
  Rep rep_;
};

inline Nat monus(const Nat& a, const Nat& b) { return a < b ? Nat{} : a - b; }

}  // namespace diagforge

template <>
struct std::hash<diagforge::Nat> {
  std::size_t operator()(const diagforge::Nat& n) const {
    std::size_t h = 0xcbf29ce484222325ull;
    auto limbs = n.rep().backend().limbs();
    for (std::size_t i = 0; i < n.rep().backend().size(); ++i) {
      h ^= static_cast<std::size_t>(limbs[i]);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};
