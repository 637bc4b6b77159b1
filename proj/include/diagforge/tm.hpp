#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "diagforge/errors.hpp"
#include "diagforge/nat.hpp"

namespace diagforge {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;

inline constexpr Symbol kBlank = 0;
inline constexpr Symbol kOne = 1;

enum class Move : std::uint8_t { Left, Right, Stay };

inline char move_char(Move m) { return m == Move::Left ? 'L' : (m == Move::Right ? 'R' : 'S'); }

struct Action {
  StateId next;
  Symbol write;
  Move move;

  friend bool operator==(const Action&, const Action&) = default;
};

struct Rule {
  StateId state;
  Symbol read;
  Action action;
};

/// Deterministic single-tape machine description.
///
/// Symbol 0 is the blank and symbol 1 is the counting symbol "1". A
/// configuration halts when its state is a halt state or has no rule for the
/// scanned symbol.
class TmSpec {
 public:
  TmSpec(std::vector<std::string> state_names, std::vector<std::string> symbol_names,
         StateId start, std::vector<StateId> halt_states, const std::vector<Rule>& rules,
         std::optional<StateId> limit_state = std::nullopt)
      : states_(std::move(state_names)),
        symbols_(std::move(symbol_names)),
        start_(start),
        limit_(limit_state) {
    if (states_.empty()) throw std::invalid_argument("machine has no states");
    if (symbols_.size() < 2) throw std::invalid_argument("alphabet must contain blank and 1");
    if (start_ >= states_.size()) throw std::invalid_argument("start state out of range");
    if (limit_ && *limit_ >= states_.size()) throw std::invalid_argument("limit state out of range");
    halting_.assign(states_.size(), false);
    for (StateId h : halt_states) {
      if (h >= states_.size()) throw std::invalid_argument("halt state out of range");
      halting_[h] = true;
    }
    table_.assign(states_.size() * symbols_.size(), std::nullopt);
    for (const Rule& r : rules) {
      if (r.state >= states_.size() || r.action.next >= states_.size())
        throw std::invalid_argument("rule references an undeclared state");
      if (r.read >= symbols_.size() || r.action.write >= symbols_.size())
        throw std::invalid_argument("rule references an undeclared symbol");
      auto& slot = table_[index(r.state, r.read)];
      if (slot) throw std::invalid_argument("duplicate rule for (" + states_[r.state] + ", " +
                                            symbols_[r.read] + ")");
      slot = r.action;
    }
  }

  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t symbol_count() const noexcept { return symbols_.size(); }
  StateId start() const noexcept { return start_; }
  std::optional<StateId> limit_state() const noexcept { return limit_; }
  bool is_halt_state(StateId q) const { return halting_[q]; }

  std::vector<StateId> halt_states() const {
    std::vector<StateId> out;
    for (StateId q = 0; q < states_.size(); ++q)
      if (halting_[q]) out.push_back(q);
    return out;
  }

  const std::string& state_name(StateId q) const { return states_[q]; }
  const std::string& symbol_name(Symbol a) const { return symbols_[a]; }

  // The rule that fires in (q, a), or nullptr when that configuration halts.
  const Action* action(StateId q, Symbol a) const {
    if (halting_[q]) return nullptr;
    const auto& slot = table_[index(q, a)];
    return slot ? &*slot : nullptr;
  }

  // Raw table entry, ignoring halt states.
  const std::optional<Action>& entry(StateId q, Symbol a) const { return table_[index(q, a)]; }

  std::vector<Rule> rules() const {
    std::vector<Rule> out;
    for (StateId q = 0; q < states_.size(); ++q)
      for (Symbol a = 0; a < symbols_.size(); ++a)
        if (const auto& e = table_[index(q, a)]) out.push_back({q, a, *e});
    return out;
  }

  std::optional<StateId> find_state(std::string_view name) const {
    for (StateId q = 0; q < states_.size(); ++q)
      if (states_[q] == name) return q;
    return std::nullopt;
  }

  friend bool operator==(const TmSpec&, const TmSpec&) = default;

 private:
  std::size_t index(StateId q, Symbol a) const { return q * symbols_.size() + a; }

  std::vector<std::string> states_;
  std::vector<std::string> symbols_;
  StateId start_;
  std::optional<StateId> limit_;
  std::vector<bool> halting_;
  std::vector<std::optional<Action>> table_;
};

/// Instantaneous description. Only non-blank cells are stored.
struct TmConfig {
  std::map<std::int64_t, Symbol> tape;
  std::int64_t head = 0;
  StateId state = 0;
  std::uint64_t steps = 0;

  Symbol read(std::int64_t cell) const {
    auto it = tape.find(cell);
    return it == tape.end() ? kBlank : it->second;
  }

  void write(std::int64_t cell, Symbol s) {
    if (s == kBlank)
      tape.erase(cell);
    else
      tape[cell] = s;
  }

  // Equality of machine state, ignoring the step counter.
  bool same_state(const TmConfig& o) const {
    return head == o.head && state == o.state && tape == o.tape;
  }

  friend bool operator==(const TmConfig&, const TmConfig&) = default;
};

struct HaltSignal {
  friend bool operator==(const HaltSignal&, const HaltSignal&) = default;
};

// Largest unary input the simulators will lay out on a tape.
inline constexpr std::uint64_t kMaxUnaryInput = std::uint64_t{1} << 26;

// Input n is written as n+1 ones immediately left of the head (cells
// -(n+1)..-1); the head starts on blank cell 0 in the start state.
inline TmConfig initial_config(const TmSpec& spec, const Nat& input) {
  if (!input.fits_u64() || input.to_u64() > kMaxUnaryInput)
    throw std::length_error("unary input too large to lay out: " + input.str());
  const auto n = static_cast<std::int64_t>(input.to_u64());
  TmConfig cfg;
  cfg.state = spec.start();
  for (std::int64_t c = -(n + 1); c <= -1; ++c) cfg.tape.emplace_hint(cfg.tape.end(), c, kOne);
  return cfg;
}

inline TmConfig blank_config(const TmSpec& spec) {
  TmConfig cfg;
  cfg.state = spec.start();
  return cfg;
}

inline std::uint64_t count_ones(const TmConfig& cfg) {
  return static_cast<std::uint64_t>(
      std::count_if(cfg.tape.begin(), cfg.tape.end(), [](const auto& kv) { return kv.second == kOne; }));
}

inline bool is_halted(const TmSpec& spec, const TmConfig& cfg) {
  return spec.action(cfg.state, cfg.read(cfg.head)) == nullptr;
}

// Applies one transition in place. Returns false (and leaves cfg untouched)
// when the configuration halts.
inline bool advance(const TmSpec& spec, TmConfig& cfg) {
  const Action* a = spec.action(cfg.state, cfg.read(cfg.head));
  if (!a) return false;
  cfg.write(cfg.head, a->write);
  if (a->move == Move::Left) --cfg.head;
  if (a->move == Move::Right) ++cfg.head;
  cfg.state = a->next;
  ++cfg.steps;
  return true;
}

inline std::variant<TmConfig, HaltSignal> step(const TmSpec& spec, const TmConfig& cfg) {
  TmConfig next = cfg;
  if (!advance(spec, next)) return HaltSignal{};
  return next;
}

struct Halted {
  Nat output;
  std::uint64_t steps;
  friend bool operator==(const Halted&, const Halted&) = default;
};

struct Diverges {
  std::uint64_t cycle_start;
  std::uint64_t cycle_length;
  friend bool operator==(const Diverges&, const Diverges&) = default;
};

struct Unknown {
  std::uint64_t budget;
  friend bool operator==(const Unknown&, const Unknown&) = default;
};

// Diverges is reserved for exact deciders; run_bounded never produces it.
using RunOutcome = std::variant<Halted, Diverges, Unknown>;

inline RunOutcome run_bounded(const TmSpec& spec, TmConfig cfg, std::uint64_t budget) {
  const std::uint64_t start = cfg.steps;
  while (cfg.steps - start < budget) {
    if (!advance(spec, cfg)) return Halted{Nat(count_ones(cfg)), cfg.steps - start};
  }
  if (is_halted(spec, cfg)) return Halted{Nat(count_ones(cfg)), cfg.steps - start};
  return Unknown{budget};
}

inline RunOutcome run_bounded(const TmSpec& spec, const Nat& input, std::uint64_t budget) {
  return run_bounded(spec, initial_config(spec, input), budget);
}

// --------------------------------------------------------------------------
// Text format
//
//   # comment
//   states: q0 q1 done      (optional; when present every state must be listed)
//   symbols: _ 1 x          (optional; when present every symbol must be listed)
//   start: q0
//   halt: done              (optional, any number of states)
//   blank: _                (optional, defaults to "_")
//   limit: q0               (optional, state entered at limit stages)
//   q0 _ -> q1 1 R
//
// Without a `states:` header, the declared states are the start state, the
// halt states and every state with a rule of its own; a rule may only target
// declared states.

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline TmSpec parse_tm(std::string_view text) {
  struct RawRule {
    std::size_t line;
    std::string from, read, to, write, move;
  };
  std::optional<std::vector<std::string>> declared_states, declared_symbols;
  std::optional<std::string> start, limit;
  std::vector<std::string> halts;
  std::string blank = "_";
  std::vector<RawRule> raw;

  auto fail = [](std::size_t line, const std::string& msg) -> ParseError {
    return ParseError(line, true, "line " + std::to_string(line) + ": " + msg);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;

    const std::string& head = toks[0];
    if (head.size() > 1 && head.back() == ':') {
      const std::string key = head.substr(0, head.size() - 1);
      std::vector<std::string> vals(toks.begin() + 1, toks.end());
      if (key == "start" || key == "blank" || key == "limit") {
        if (vals.size() != 1) throw fail(line_no, "'" + key + ":' takes exactly one name");
        if (key == "start") start = vals[0];
        if (key == "blank") blank = vals[0];
        if (key == "limit") limit = vals[0];
      } else if (key == "halt") {
        halts.insert(halts.end(), vals.begin(), vals.end());
      } else if (key == "states") {
        declared_states = vals;
      } else if (key == "symbols") {
        declared_symbols = vals;
      } else {
        throw fail(line_no, "unknown header '" + key + ":'");
      }
      continue;
    }

    if (toks.size() != 6 || toks[2] != "->")
      throw fail(line_no, "expected 'state symbol -> state symbol move'");
    if (toks[5] != "L" && toks[5] != "R" && toks[5] != "S")
      throw fail(line_no, "move must be L, R or S, got '" + toks[5] + "'");
    raw.push_back({line_no, toks[0], toks[1], toks[3], toks[4], toks[5]});
  }

  if (!start) throw fail(line_no, "missing 'start:' header");

  // States, in first-mention order unless declared explicitly.
  std::vector<std::string> states;
  auto add_unique = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  if (declared_states) {
    for (const auto& s : *declared_states) add_unique(states, s);
  } else {
    add_unique(states, *start);
    for (const auto& r : raw) add_unique(states, r.from);
    for (const auto& h : halts) add_unique(states, h);
  }
  auto state_id = [&](const std::string& name, std::size_t line) -> StateId {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw fail(line, "undeclared state '" + name + "'");
    return static_cast<StateId>(it - states.begin());
  };

  std::vector<std::string> symbols{blank};
  if (declared_symbols) {
    if (std::find(declared_symbols->begin(), declared_symbols->end(), blank) == declared_symbols->end())
      throw fail(line_no, "blank symbol '" + blank + "' missing from 'symbols:'");
    add_unique(symbols, "1");
    for (const auto& s : *declared_symbols) add_unique(symbols, s);
  } else {
    add_unique(symbols, "1");
    for (const auto& r : raw) {
      add_unique(symbols, r.read);
      add_unique(symbols, r.write);
    }
  }
  auto symbol_id = [&](const std::string& name, std::size_t line) -> Symbol {
    if (declared_symbols && name != blank && name != "1" &&
        std::find(declared_symbols->begin(), declared_symbols->end(), name) == declared_symbols->end())
      throw fail(line, "undeclared symbol '" + name + "'");
    auto it = std::find(symbols.begin(), symbols.end(), name);
    if (it == symbols.end()) throw fail(line, "undeclared symbol '" + name + "'");
    return static_cast<Symbol>(it - symbols.begin());
  };

  const StateId start_id = state_id(*start, line_no);
  std::vector<StateId> halt_ids;
  for (const auto& h : halts) halt_ids.push_back(state_id(h, line_no));
  std::optional<StateId> limit_id;
  if (limit) limit_id = state_id(*limit, line_no);

  std::vector<Rule> rules;
  std::set<std::pair<StateId, Symbol>> seen;
  for (const auto& r : raw) {
    Rule rule{state_id(r.from, r.line), symbol_id(r.read, r.line),
              Action{state_id(r.to, r.line), symbol_id(r.write, r.line),
                     r.move == "L" ? Move::Left : (r.move == "R" ? Move::Right : Move::Stay)}};
    if (!seen.insert({rule.state, rule.read}).second)
      throw fail(r.line, "duplicate rule for (" + r.from + ", " + r.read + ")");
    rules.push_back(rule);
  }

  return TmSpec(std::move(states), std::move(symbols), start_id, std::move(halt_ids), rules, limit_id);
}

inline std::string print_tm(const TmSpec& spec) {
  std::string out;
  out += "states:";
  for (StateId q = 0; q < spec.state_count(); ++q) out += " " + spec.state_name(q);
  out += "\nsymbols:";
  for (Symbol a = 0; a < spec.symbol_count(); ++a) out += " " + spec.symbol_name(a);
  out += "\nstart: " + spec.state_name(spec.start()) + "\n";
  if (auto hs = spec.halt_states(); !hs.empty()) {
    out += "halt:";
    for (StateId h : hs) out += " " + spec.state_name(h);
    out += "\n";
  }
  out += "blank: " + spec.symbol_name(kBlank) + "\n";
  if (spec.limit_state()) out += "limit: " + spec.state_name(*spec.limit_state()) + "\n";
  for (const Rule& r : spec.rules()) {
    out += spec.state_name(r.state) + " " + spec.symbol_name(r.read) + " -> " +
           spec.state_name(r.action.next) + " " + spec.symbol_name(r.action.write) + " " +
           move_char(r.action.move) + "\n";
  }
  return out;
}

}  // namespace diagforge
