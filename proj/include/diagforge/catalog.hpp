#pragma once

#include <string_view>

#include "diagforge/tm.hpp"

// Small named machines used by the demos, checks and tests. The same sources
// ship as files under machines/.
namespace diagforge::catalog {

inline constexpr std::string_view kImmediateHalt = R"(# halts before taking a step
start: q0
)";

inline constexpr std::string_view kSelfLoop = R"(# stays in place forever
start: q0
q0 _ -> q0 _ S
q0 1 -> q0 1 S
)";

// Two configurations, visited alternately.
inline constexpr std::string_view kAlternator = R"(start: a
a _ -> b _ S
b _ -> a _ S
a 1 -> b 1 S
b 1 -> a 1 S
)";

inline constexpr std::string_view kBusyBeaver2 = R"(# 2-state, 2-symbol busy beaver champion: 6 steps, 4 ones from a blank tape
start: A
halt: H
A _ -> B 1 R
A 1 -> B 1 L
B _ -> A 1 L
B 1 -> H 1 R
)";

// Semi-decider for the even numbers: walks over the n+1 input ones keeping
// parity, halts iff n is even.
inline constexpr std::string_view kEvenSemiDecider = R"(start: q0
q0 _ -> even _ L
even 1 -> odd 1 L
odd 1 -> even 1 L
odd _ -> accept _ S
even _ -> even _ S
halt: accept
)";

// Writes a 1 at the head and moves right, forever.
inline constexpr std::string_view kRunaway = R"(start: q0
q0 _ -> q0 1 R
q0 1 -> q0 1 R
)";

// Successor under the unary convention: adds one more 1 to the input.
inline constexpr std::string_view kSuccessor = R"(start: q0
halt: done
q0 _ -> done 1 S
)";

// --- Accelerating machines (output square at cell 0, head starts there,
// --- input ones at cells 1..n+1).

inline constexpr std::string_view kAtmMarkNow = R"(# marks the output square on its first step
start: q0
halt: done
q0 _ -> done 1 S
)";

inline constexpr std::string_view kAtmNeverMarks = R"(# steps off the output square and idles on the first input cell
start: q0
q0 _ -> wait _ R
wait 1 -> wait 1 S
)";

// Marks iff n == 0, i.e. computes 1 - n on {0, 1}. Halts within 5 steps.
inline constexpr std::string_view kAtmNegation = R"(start: q0
halt: done
q0 _ -> a _ R
a 1 -> b 1 R
b 1 -> done 1 S
b _ -> back _ L
back 1 -> m 1 L
m _ -> done 1 S
)";

// Marks and then erases the mark: a write-once violation.
inline constexpr std::string_view kAtmEraser = R"(start: q0
halt: done
q0 _ -> q1 1 S
q1 1 -> done _ S
)";

// Checks the first input cell and marks: accepts every input, in 3 steps.
inline constexpr std::string_view kAtmAcceptAll = R"(start: q0
halt: done
q0 _ -> a _ R
a 1 -> back 1 L
back _ -> done 1 S
)";

// --- Oracle machine computing g for the space-bounded class: asks whether
// --- machine x halts on x; on "no" erases the input and halts with 0, on
// --- "yes" idles forever.
inline constexpr std::string_view kOracleG = R"(start: ask
states: ask yes no erase
yes _ -> yes _ S
no _ -> erase _ L
erase 1 -> erase _ L
)";

inline TmSpec load(std::string_view source) { return parse_tm(source); }

}  // namespace diagforge::catalog
