#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "diagforge/cycle.hpp"
#include "diagforge/tm.hpp"

namespace diagforge {

/// Space budget for the exactly-decidable machine class.
///
/// For a starting configuration, let `left` and `right` be the extreme cells
/// among the head and the non-blank cells. The bounded region is
/// [left - 1, right + cells - 1]: one delimiter cell, the occupied span, and
/// `cells` cells of workspace starting at `right`. With the unary input
/// convention (ones left of the head) that is -(n+2) .. cells-1. A run whose
/// head leaves the region is out of space; inside it the configuration space
/// is finite, so every run either halts or cycles.
struct SpaceBound {
  std::size_t cells;

  explicit SpaceBound(std::size_t s) : cells(s) {
    if (s == 0) throw std::invalid_argument("space bound must be at least 1 cell");
  }
};

struct Region {
  std::int64_t lo;
  std::int64_t hi;  // inclusive

  bool contains(std::int64_t cell) const { return cell >= lo && cell <= hi; }
  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
};

inline Region region_for(const TmConfig& start, SpaceBound bound) {
  std::int64_t left = start.head;
  std::int64_t right = start.head;
  if (!start.tape.empty()) {
    left = std::min(left, start.tape.begin()->first);
    right = std::max(right, start.tape.rbegin()->first);
  }
  return {left - 1, right + static_cast<std::int64_t>(bound.cells) - 1};
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t cell_key(std::size_t pos, Symbol s) {
  return splitmix64((static_cast<std::uint64_t>(pos) << 16) ^ s);
}

}  // namespace detail

/// Dense configuration over a fixed region, with an incrementally maintained
/// hash of the non-blank cells so unequal configurations usually compare in
/// O(1).
struct DenseConfig {
  std::vector<Symbol> cells;
  std::size_t head = 0;  // offset into cells
  StateId state = 0;
  std::uint64_t hash = 0;

  void write(std::size_t pos, Symbol s) {
    Symbol& slot = cells[pos];
    if (slot == s) return;
    if (slot != kBlank) hash ^= detail::cell_key(pos, slot);
    if (s != kBlank) hash ^= detail::cell_key(pos, s);
    slot = s;
  }

  friend bool operator==(const DenseConfig& a, const DenseConfig& b) {
    return a.state == b.state && a.head == b.head && a.hash == b.hash && a.cells == b.cells;
  }
};

/// A machine confined to a region: the FiniteSystem the exact tier runs.
class BoundedMachine {
 public:
  using Config = DenseConfig;

  BoundedMachine(const TmSpec& spec, Region region) : spec_(&spec), region_(region) {}

  const Region& region() const { return region_; }
  const TmSpec& spec() const { return *spec_; }

  Config load(const TmConfig& cfg) const {
    if (!region_.contains(cfg.head)) throw std::invalid_argument("head starts outside the bounded region");
    Config out;
    out.cells.assign(region_.size(), kBlank);
    for (const auto& [cell, sym] : cfg.tape) {
      if (!region_.contains(cell)) throw std::invalid_argument("input does not fit the bounded region");
      out.write(offset(cell), sym);
    }
    out.head = offset(cfg.head);
    out.state = cfg.state;
    return out;
  }

  TmConfig unload(const Config& c, std::uint64_t steps = 0) const {
    TmConfig out;
    for (std::size_t i = 0; i < c.cells.size(); ++i)
      if (c.cells[i] != kBlank) out.tape.emplace_hint(out.tape.end(), cell_at(i), c.cells[i]);
    out.head = cell_at(c.head);
    out.state = c.state;
    out.steps = steps;
    return out;
  }

  bool halted(const Config& c) const { return spec_->action(c.state, c.cells[c.head]) == nullptr; }

  Advance advance(Config& c) const {
    const Action* a = spec_->action(c.state, c.cells[c.head]);
    if (!a) return Advance::Stopped;
    if ((a->move == Move::Left && c.head == 0) ||
        (a->move == Move::Right && c.head + 1 == c.cells.size())) {
      return Advance::Escaped;
    }
    c.write(c.head, a->write);
    if (a->move == Move::Left) --c.head;
    if (a->move == Move::Right) ++c.head;
    c.state = a->next;
    return Advance::Moved;
  }

  std::int64_t cell_at(std::size_t offset) const { return region_.lo + static_cast<std::int64_t>(offset); }
  std::size_t offset(std::int64_t cell) const { return static_cast<std::size_t>(cell - region_.lo); }

 private:
  const TmSpec* spec_;
  Region region_;
};

static_assert(FiniteSystem<BoundedMachine>);

/// The same confinement on the sparse simulator. Slower than BoundedMachine,
/// and deliberately shares none of its code, so the two can check each other.
class SparseBoundedMachine {
 public:
  struct Config {
    TmConfig cfg;
    friend bool operator==(const Config& a, const Config& b) { return a.cfg.same_state(b.cfg); }
  };

  SparseBoundedMachine(const TmSpec& spec, Region region) : spec_(&spec), region_(region) {}

  const Region& region() const { return region_; }

  Advance advance(Config& c) const {
    const Action* a = spec_->action(c.cfg.state, c.cfg.read(c.cfg.head));
    if (!a) return Advance::Stopped;
    const std::int64_t next = c.cfg.head + (a->move == Move::Left ? -1 : (a->move == Move::Right ? 1 : 0));
    if (!region_.contains(next)) return Advance::Escaped;
    diagforge::advance(*spec_, c.cfg);
    return Advance::Moved;
  }

 private:
  const TmSpec* spec_;
  Region region_;
};

static_assert(FiniteSystem<SparseBoundedMachine>);

}  // namespace diagforge
