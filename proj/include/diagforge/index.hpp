#pragma once

#include <compare>
#include <ostream>
#include <utility>

#include "diagforge/nat.hpp"

namespace diagforge {

// A position in one of the enumerations (terms or machines). Every natural is
// a valid index.
struct GodelIndex {
  Nat value;

  GodelIndex() = default;
  explicit GodelIndex(Nat v) : value(std::move(v)) {}

  friend bool operator==(const GodelIndex&, const GodelIndex&) = default;
  friend std::strong_ordering operator<=>(const GodelIndex& a, const GodelIndex& b) {
    return a.value <=> b.value;
  }
  friend std::ostream& operator<<(std::ostream& os, const GodelIndex& x) { return os << x.value; }
};

}  // namespace diagforge
