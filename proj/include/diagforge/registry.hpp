#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagforge/atm.hpp"
#include "diagforge/catalog.hpp"
#include "diagforge/diagonal.hpp"
#include "diagforge/godel.hpp"
#include "diagforge/halting.hpp"
#include "diagforge/pr_eval.hpp"
#include "diagforge/tm_numbering.hpp"

// Models of computation against the seven properties that together let a
// class compute its own diagonal j:
//
//   1 machines are encoded as inputs       5 some k maps every y to something else
//   2 encodings are recognizable            6 conditional branching
//   3 self-application divergence decided  7 closure under composition
//   4 self-application values computed
//
// A status is either checked by running code here or declared with a
// citation. Holding all seven is inconsistent, so the registry refuses any
// such entry unless it is flagged as a deliberate contradiction.
namespace diagforge {

enum class PropertyStatus { HoldsChecked, HoldsDeclared, FailsChecked, FailsDeclared };

inline const char* status_name(PropertyStatus s) {
  switch (s) {
    case PropertyStatus::HoldsChecked: return "holds-checked";
    case PropertyStatus::HoldsDeclared: return "holds-declared";
    case PropertyStatus::FailsChecked: return "fails-checked";
    case PropertyStatus::FailsDeclared: return "fails-declared";
  }
  return "?";
}

inline bool holds(PropertyStatus s) { return s == PropertyStatus::HoldsChecked || s == PropertyStatus::HoldsDeclared; }
inline bool is_checked(PropertyStatus s) {
  return s == PropertyStatus::HoldsChecked || s == PropertyStatus::FailsChecked;
}

inline constexpr std::array<const char*, 7> kPropertyNames = {
    "encodes each machine as an input",
    "recognizes encodings of its machines",
    "decides divergence of self-application",
    "computes values of self-application",
    "computes a fixed-point-free map on outputs",
    "branches conditionally",
    "is closed under composition",
};

struct Property {
  int id;
  PropertyStatus status;
  std::string justification;
  std::string check;  // executable check id, for checked statuses
};

struct Coding {
  std::string name;
  std::array<Property, 7> properties;

  std::vector<int> missing() const {
    std::vector<int> out;
    for (const Property& p : properties)
      if (!holds(p.status)) out.push_back(p.id);
    return out;
  }
};

struct ModelDescriptor {
  std::string name;
  std::string title;
  std::string domain;
  std::string codomain;
  std::string index_scheme;  // "none" when the class has no encoding
  std::vector<Coding> codings;
  bool contradiction_flag = false;
};

// --- executable checks

struct AuditConfig {
  SpaceBound bound{8};
  std::uint64_t pr_step_cap = 100'000;
  std::uint64_t sweep = 200;  // indices per sweep
  std::uint64_t semi_budget = 1000;
};

struct CheckResult {
  bool passed;
  std::string detail;
};

namespace checks {

inline CheckResult pr_numbering_bijective(const AuditConfig& c) {
  for (std::uint64_t x = 0; x < c.sweep * 10; ++x)
    if (encode_term(decode_index(GodelIndex(Nat(x)))).value != Nat(x))
      return {false, "round trip fails at index " + std::to_string(x)};
  return {true, "every index below " + std::to_string(c.sweep * 10) + " decodes to a term that encodes back to it"};
}

inline CheckResult pr_h_differs(const AuditConfig& c) {
  const EvalLimits lim{c.pr_step_cap, 1'000'000};
  std::uint64_t definite = 0, exhausted = 0, violations = 0;
  for (std::uint64_t x = 0; x < c.sweep; ++x) {
    try {
      const GodelIndex gx{Nat(x)};
      const Nat v = universal_pr_eval(gx, Nat(x), lim);
      const Nat h = diagonal_h(gx, lim);
      if (h == v || h != v + Nat(1)) ++violations;
      ++definite;
    } catch (const ResourceExhausted&) {
      ++exhausted;
    }
  }
  return {violations == 0 && definite > 0,
          "h(x) = psi_x(x) + 1 differs from psi_x at x on " + std::to_string(definite) + " indices (" +
              std::to_string(exhausted) + " over the step cap, " + std::to_string(violations) +
              " violations): h is computable from the universal evaluator but is no term, so the "
              "universal evaluator is not one either"};
}

inline CheckResult pr_successor_k(const AuditConfig&) {
  const PrTerm s = PrTerm::succ();
  for (std::uint64_t y = 0; y < 200; ++y)
    if (eval_pr(s, {Nat(y)}) == Nat(y)) return {false, "S has a fixed point at " + std::to_string(y)};
  return {true, "the term S satisfies S(y) != y on 0..199"};
}

inline CheckResult pr_composition(const AuditConfig& c) {
  // C[f; g](a) = f(g(a)) on unary terms drawn from the numbering.
  const EvalLimits lim{c.pr_step_cap, 1'000'000};
  std::uint64_t tried = 0;
  for (std::uint64_t fi = 0; fi < 40; fi += 3) {
    for (std::uint64_t gi = 0; gi < 40; gi += 7) {
      const PrTerm f = decode_index(GodelIndex(Nat(fi))), g = decode_index(GodelIndex(Nat(gi)));
      if (f.arity() != 1 || g.arity() != 1) continue;
      const PrTerm fg = PrTerm::comp(f, {g});
      for (std::uint64_t a = 0; a < 5; ++a) {
        try {
          if (eval_pr(fg, {Nat(a)}, lim) != eval_pr(f, {eval_pr(g, {Nat(a)}, lim)}, lim))
            return {false, "composition mismatch for " + fg.to_string()};
          ++tried;
        } catch (const ResourceExhausted&) {
        }
      }
    }
  }
  return {tried > 0, "C[f; g](a) = f(g(a)) on " + std::to_string(tried) + " evaluations"};
}

inline CheckResult tm_numbering_bijective(const AuditConfig& c) {
  for (std::uint64_t x = 0; x < c.sweep * 10; ++x)
    if (encode_tm(decode_tm(GodelIndex(Nat(x)))).value != Nat(x))
      return {false, "round trip fails at index " + std::to_string(x)};
  return {true, "every index below " + std::to_string(c.sweep * 10) + " decodes to a machine that encodes back to it"};
}

inline CheckResult tm_semi_never_proves_divergence(const AuditConfig& c) {
  std::uint64_t semi_div = 0, semi_halts = 0, exact_div = 0, in_bound = 0, disagreements = 0;
  for (std::uint64_t x = 0; x < c.sweep; ++x) {
    const GodelIndex gx{Nat(x)};
    const OracleAnswer semi = semi_decide_halt(gx, Nat(x), c.semi_budget);
    if (std::holds_alternative<DivergesProven>(semi)) ++semi_div;
    if (std::holds_alternative<Halts>(semi)) ++semi_halts;
    try {
      const OracleAnswer ex = lba_halt_decide(gx, Nat(x), c.bound);
      ++in_bound;
      if (std::holds_alternative<DivergesProven>(ex)) ++exact_div;
      if (std::holds_alternative<Halts>(semi) && !std::holds_alternative<Halts>(ex)) ++disagreements;
    } catch (const OutOfSpace&) {
    }
  }
  return {semi_div == 0 && exact_div > 0 && disagreements == 0,
          "running machines answered 'halts' " + std::to_string(semi_halts) + " times and proved divergence " +
              std::to_string(semi_div) + " times on x < " + std::to_string(c.sweep) +
              "; the exact decider one tier up proved " + std::to_string(exact_div) + " divergences among " +
              std::to_string(in_bound) + " in-bound indices"};
}

inline CheckResult tm_loop_is_k(const AuditConfig& c) {
  const TmSpec loop = parse_tm(catalog::kSelfLoop);
  for (std::uint64_t y = 0; y < 20; ++y)
    if (!std::holds_alternative<DivergesProven>(lba_halt_decide(loop, initial_config(loop, Nat(y)), c.bound)))
      return {false, "self-loop machine not proven divergent on " + std::to_string(y)};
  return {true, "the self-loop machine diverges on every input checked (0..19), so it never returns its input"};
}

inline CheckResult atm_composition_rejected(const AuditConfig&) {
  const AtmProgram solver = AtmProgram::halting_solver();
  const AtmProgram neg = AtmProgram::table(parse_tm(catalog::kAtmNegation), "negation");
  const AtmProgram all = AtmProgram::table(parse_tm(catalog::kAtmAcceptAll), "accept-all");
  const ComposeReport bad = compose_check(solver, neg);
  const ComposeReport good = compose_check(neg, all);
  const bool ok = !bad.accepted && bad.reason == kExternalTimeReason && good.accepted;
  return {ok, "halting-solver then negation: " + std::string(bad.accepted ? "accepted" : "rejected") + " (" +
                  bad.reason + "); negation then accept-all: " + (good.accepted ? "accepted" : "rejected") + " (" +
                  good.reason + ")"};
}

inline CheckResult atm_negation_k(const AuditConfig& c) {
  const AtmProgram neg = AtmProgram::table(parse_tm(catalog::kAtmNegation), "negation");
  const bool m0 = is_marked(atm_run(neg, Nat(0), 0, c.bound));
  const bool m1 = is_marked(atm_run(neg, Nat(1), 0, c.bound));
  return {m0 && !m1, std::string("negation machine maps 0 -> ") + (m0 ? "1" : "0") + " and 1 -> " + (m1 ? "1" : "0")};
}

inline CheckResult atm_solver_decides(const AuditConfig& c) {
  const AtmProgram solver = AtmProgram::halting_solver();
  std::uint64_t in_bound = 0, mismatches = 0;
  for (std::uint64_t x = 0; x < c.sweep; ++x) {
    try {
      const bool marked = is_marked(atm_run(solver, Nat(x), 0, c.bound));
      const bool halts = halting_f(GodelIndex(Nat(x)), Nat(x), ExactTier{c.bound}) == HaltValue::Halts;
      ++in_bound;
      if (marked != halts) ++mismatches;
    } catch (const OutOfSpace&) {
    }
  }
  return {mismatches == 0 && in_bound > 0, "halting solver matches the exact decider on " + std::to_string(in_bound) +
                                               " in-bound plain machines (" + std::to_string(mismatches) +
                                               " mismatches)"};
}

inline CheckResult omachine_own_divergence(const AuditConfig& c) {
  // The oracle answers questions about plain machines, which is enough to
  // compute g for them; whether an oracle machine itself diverges is only
  // certified by the exact decider over oracle machines, one tier up.
  const OracleMachine om = g_oracle_machine(c.bound);
  std::uint64_t agree = 0, disagree = 0, run_diverges = 0, exact_diverges = 0;
  for (std::uint64_t x = 0; x < c.sweep; ++x) {
    try {
      const GResult g = diagonal_g(GodelIndex(Nat(x)), c.bound);
      const OracleAnswer own = oracle_machine_decide(om, Nat(x), c.bound);
      const RunOutcome run = run_oracle_machine(om, Nat(x), c.semi_budget);
      if (std::holds_alternative<Diverges>(run)) ++run_diverges;
      if (std::holds_alternative<DivergesProven>(own)) ++exact_diverges;
      const bool g_zero = std::holds_alternative<GValue>(g);
      const bool halted_zero = std::holds_alternative<Halts>(own);
      (g_zero == halted_zero ? agree : disagree) += 1;
    } catch (const OutOfSpace&) {
    }
  }
  return {disagree == 0 && agree > 0 && run_diverges == 0 && exact_diverges > 0,
          "the g oracle machine reproduces g on " + std::to_string(agree) + " in-bound indices (" +
              std::to_string(disagree) + " disagreements); its own " + std::to_string(exact_diverges) +
              " divergences were certified only by the exact decider over oracle machines"};
}

}  // namespace checks

using CheckFn = std::function<CheckResult(const AuditConfig&)>;

inline const std::map<std::string, CheckFn>& check_table() {
  static const std::map<std::string, CheckFn> table = {
      {"pr-numbering-bijective", checks::pr_numbering_bijective},
      {"pr-h-differs", checks::pr_h_differs},
      {"pr-successor-k", checks::pr_successor_k},
      {"pr-composition", checks::pr_composition},
      {"tm-numbering-bijective", checks::tm_numbering_bijective},
      {"tm-semi-never-proves-divergence", checks::tm_semi_never_proves_divergence},
      {"tm-loop-is-k", checks::tm_loop_is_k},
      {"atm-composition-rejected", checks::atm_composition_rejected},
      {"atm-negation-k", checks::atm_negation_k},
      {"atm-solver-decides", checks::atm_solver_decides},
      {"omachine-own-divergence", checks::omachine_own_divergence},
  };
  return table;
}

// --- registry

namespace detail {

inline Property hc(int id, std::string why, std::string check) {
  return {id, PropertyStatus::HoldsChecked, std::move(why), std::move(check)};
}
inline Property hd(int id, std::string why) { return {id, PropertyStatus::HoldsDeclared, std::move(why), ""}; }
inline Property fc(int id, std::string why, std::string check) {
  return {id, PropertyStatus::FailsChecked, std::move(why), std::move(check)};
}
inline Property fd(int id, std::string why) { return {id, PropertyStatus::FailsDeclared, std::move(why), ""}; }

inline void validate(const ModelDescriptor& m) {
  if (m.codings.empty()) throw std::logic_error(m.name + ": no coding");
  for (const Coding& c : m.codings) {
    for (std::size_t i = 0; i < 7; ++i) {
      const Property& p = c.properties[i];
      if (p.id != static_cast<int>(i) + 1) throw std::logic_error(m.name + ": properties out of order");
      if (is_checked(p.status) && !check_table().count(p.check))
        throw std::logic_error(m.name + ": property " + std::to_string(p.id) + " has no executable check");
      if (!is_checked(p.status) && p.justification.empty())
        throw std::logic_error(m.name + ": declared property " + std::to_string(p.id) + " lacks a citation");
    }
    if (c.missing().empty() && !m.contradiction_flag)
      throw std::logic_error(m.name + ": all seven properties hold without the contradiction flag");
  }
}

inline std::vector<ModelDescriptor> build_registry() {
  const std::string no_encoding_cascade = "without an encoding there is nothing to recognize, decide or evaluate";
  std::vector<ModelDescriptor> r;

  r.push_back({"turing-machines", "Turing machines", "N", "N", "tm-table-numbering",
               {{"standard", {{
                   hc(1, "every machine table has an index in a bijective numbering", "tm-numbering-bijective"),
                   hc(2, "the numbering is total: every natural decodes to a machine", "tm-numbering-bijective"),
                   fc(3, "running a machine only ever confirms halting; divergence of x on x is proven by a "
                         "decider outside the class", "tm-semi-never-proves-divergence"),
                   hd(4, "a universal machine simulates machine x on x (the halting class is r.e.)"),
                   hc(5, "a looping machine computes the everywhere-divergent map", "tm-loop-is-k"),
                   hd(6, "transitions branch on the scanned symbol"),
                   hd(7, "running one machine after another is a machine"),
               }}}}});

  r.push_back({"primitive-recursive", "Primitive recursive functions", "N", "N", "pr-term-numbering",
               {{"standard", {{
                   hc(1, "every term has an index in a bijective numbering", "pr-numbering-bijective"),
                   hc(2, "the numbering is total: every natural decodes to a term", "pr-numbering-bijective"),
                   hd(3, "terms are total, so self-application never diverges and the answer is constant"),
                   fc(4, "the evaluator of psi_x(x) outruns every term, as h shows by differing from each "
                         "term at its own index", "pr-h-differs"),
                   hc(5, "successor is a term with no fixed point", "pr-successor-k"),
                   hd(6, "definition by cases is primitive recursive"),
                   hc(7, "composition is a term constructor", "pr-composition"),
               }}}}});

  r.push_back({"total-recursive", "Total recursive functions", "N", "N", "program-indices or total enumeration",
               {{"program-indices", {{
                    hd(1, "programs of total functions are numbered among all programs"),
                    fd(2, "whether a program computes a total function is undecidable (not r.e.)"),
                    hd(3, "members are total, so self-application never diverges"),
                    hd(4, "a universal program evaluates any total program on its own index"),
                    hd(5, "successor is total recursive"),
                    hd(6, "definition by cases preserves totality"),
                    hd(7, "composition of total functions is total"),
                }}},
                {"total-enumeration", {{
                    hd(1, "an enumeration listing exactly the total functions is fixed as the coding"),
                    hd(2, "every code of the enumeration names a member"),
                    hd(3, "members are total, so self-application never diverges"),
                    fd(4, "an evaluator for such an enumeration would be total and diagonalizable, so it is "
                          "not total recursive"),
                    hd(5, "successor is total recursive"),
                    hd(6, "definition by cases preserves totality"),
                    hd(7, "composition of total functions is total"),
                }}}}});

  r.push_back({"accelerating-tm", "Accelerating Turing machines", "N", "{0,1}", "tm-table-numbering",
               {{"standard", {{
                   hd(1, "accelerating machines are machine tables and share the plain numbering"),
                   hd(2, "the numbering is total"),
                   hd(3, "simulating a machine and marking on halt decides its divergence at external time"),
                   hd(4, "simulation yields the self-application value at external time"),
                   hc(5, "the negation table swaps 0 and 1", "atm-negation-k"),
                   hd(6, "transitions branch on the scanned symbol"),
                   fc(7, "a stage whose answer only exists at external time cannot feed a later stage",
                      "atm-composition-rejected"),
               }}}}});

  r.push_back({"o-machine-atm-oracle", "Oracle machines with an accelerating-machine oracle", "N", "N",
               "tm-table-numbering plus query states",
               {{"standard", {{
                   hd(1, "oracle machines are machine tables with query states and are numbered as such"),
                   hd(2, "the numbering is total"),
                   fc(3, "the oracle answers halting for plain machines only; oracle machines' own divergence "
                         "needs a decider one tier up",
                      "omachine-own-divergence"),
                   hd(4, "a universal oracle machine simulates any oracle machine with the same oracle"),
                   hd(5, "a looping oracle machine computes the everywhere-divergent map"),
                   hd(6, "transitions branch on the scanned symbol and on oracle answers"),
                   hd(7, "oracle machines compose like plain machines"),
               }}}}});

  r.push_back({"ittm", "Infinite time Turing machines", "N", "{0,1}", "tm-table-numbering",
               {{"standard", {{
                   hd(1, "infinite time machines are machine tables and share the plain numbering"),
                   hd(2, "the numbering is total"),
                   fd(3, "they decide halting of plain machines by stage omega, but not the halting of "
                         "infinite time machines themselves"),
                   hd(4, "a universal infinite time machine simulates any other through limit stages"),
                   hd(5, "negation on {0,1} is computable"),
                   hd(6, "transitions branch on the scanned symbol"),
                   hd(7, "infinite time machines compose"),
               }}}}});

  r.push_back({"processor-networks", "Recurrent processor networks with real weights", "N", "N", "none",
               {{"standard", {{
                   fd(1, "there are uncountably many networks but only countably many natural inputs"),
                   fd(2, no_encoding_cascade),
                   fd(3, no_encoding_cascade),
                   fd(4, no_encoding_cascade),
                   hd(5, "they compute every function on the naturals, successor included"),
                   hd(6, "they compute every function on the naturals, case distinctions included"),
                   hd(7, "the composite of two functions on the naturals is again computed by some network"),
               }}}}});

  r.push_back({"quantum-adiabatic", "Adiabatic quantum computers for Diophantine problems", "N", "{0,1}", "none",
               {{"standard", {{
                   fd(1, "each computer is a continuously parameterized physical process with no encoding "
                         "as a natural input"),
                   fd(2, no_encoding_cascade),
                   fd(3, no_encoding_cascade),
                   fd(4, no_encoding_cascade),
                   hd(5, "a classical negation of the measured bit is available"),
                   hd(6, "classical control around the device branches on results"),
                   hd(7, "classical pre- and post-processing compose with a run"),
               }}}}});

  for (const auto& m : r) validate(m);
  return r;
}

}  // namespace detail

inline const std::vector<ModelDescriptor>& model_registry() {
  static const std::vector<ModelDescriptor> registry = detail::build_registry();
  return registry;
}

inline const ModelDescriptor& find_model(std::string_view name) {
  for (const auto& m : model_registry())
    if (m.name == name) return m;
  throw std::out_of_range("unregistered model '" + std::string(name) + "'");
}

// --- audit

struct CheckOutcome {
  int property;
  std::string check;
  CheckResult result;
};

struct CodingReport {
  std::string coding;
  std::array<Property, 7> properties;
  std::vector<int> missing;
  std::vector<CheckOutcome> checks;
};

struct CapabilityReport {
  std::string model;
  std::string title;
  std::vector<CodingReport> codings;
  bool checks_passed = true;
};

/// Runs every executable check behind a model's checked statuses. A check
/// "passes" when it confirms the status in the stated direction.
inline CapabilityReport capability_audit(const ModelDescriptor& model, const AuditConfig& config = {}) {
  CapabilityReport rep{model.name, model.title, {}, true};
  std::map<std::string, CheckResult> memo;
  for (const Coding& c : model.codings) {
    CodingReport cr{c.name, c.properties, c.missing(), {}};
    for (const Property& p : c.properties) {
      if (!is_checked(p.status)) continue;
      auto it = memo.find(p.check);
      if (it == memo.end()) it = memo.emplace(p.check, check_table().at(p.check)(config)).first;
      cr.checks.push_back({p.id, p.check, it->second});
      rep.checks_passed = rep.checks_passed && it->second.passed;
    }
    rep.codings.push_back(std::move(cr));
  }
  return rep;
}

inline CapabilityReport capability_audit(std::string_view name, const AuditConfig& config = {}) {
  return capability_audit(find_model(name), config);
}

// ---------------------------------------------------------------------------
// Contradiction witnesses for descriptors that claim all seven properties.

struct Transcript {
  std::string model;
  std::vector<std::string> lines;
  bool inconsistent = false;
  std::string conclusion;  // the derived self-inequality
};

struct FlawedModel {
  ModelDescriptor descriptor;
  std::function<Transcript()> self_evaluator;
};

namespace detail {

inline std::array<Property, 7> all_hold(const std::string& why) {
  std::array<Property, 7> out;
  for (int i = 0; i < 7; ++i) out[static_cast<std::size_t>(i)] = hd(i + 1, why);
  return out;
}

inline std::string table_str(const std::vector<std::uint64_t>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + std::to_string(t[i]);
  return s + "]";
}

// Four functions on {0..3}, claimed closed under their own diagonal.
inline Transcript toy_tables_transcript() {
  const std::vector<std::vector<std::uint64_t>> tables = {{0, 1, 2, 3}, {1, 1, 1, 1}, {3, 2, 1, 0}, {2, 3, 0, 1}};
  const std::uint64_t claimed = 1;
  JSpec<std::uint64_t, std::uint64_t> spec;
  spec.name = "toy-four-tables";
  spec.domain = finite_range(4);
  spec.codomain = finite_range(4);
  spec.in_index_set = [](const std::uint64_t&) { return true; };
  spec.y0 = 0;
  spec.k = [](const std::uint64_t& y) -> std::optional<std::uint64_t> { return (y + 1) % 4; };
  spec.evaluator = [tables](const std::uint64_t& x) -> SelfApplication<std::uint64_t> {
    return Returned<std::uint64_t>{tables[x][x]};
  };
  const auto j = build_j(spec);

  Transcript t;
  t.model = "toy-four-tables";
  for (std::size_t i = 0; i < tables.size(); ++i)
    t.lines.push_back("psi_" + std::to_string(i) + " = " + table_str(tables[i]));
  t.lines.push_back("k(y) = y + 1 mod 4; no fixed point on {0..3} (checked on all " +
                    std::to_string(j.k_check().checked) + " points)");
  std::vector<std::uint64_t> jt;
  for (std::uint64_t x = 0; x < 4; ++x) jt.push_back(std::get<JValue<std::uint64_t>>(j(x)).value);
  t.lines.push_back("j = " + table_str(jt) + " (j(x) = k(psi_x(x)))");
  std::uint64_t differs = 0;
  for (std::uint64_t x = 0; x < 4; ++x) differs += jt[x] != tables[x][x];
  t.lines.push_back("j(x) != psi_x(x) at " + std::to_string(differs) + " of 4 indices");
  t.lines.push_back("claim (closure): j is psi_" + std::to_string(claimed));
  const std::uint64_t direct = tables[claimed][claimed];
  const std::uint64_t via_j = jt[claimed];
  const std::string i = std::to_string(claimed);
  t.lines.push_back("psi_" + i + "(" + i + ") = " + std::to_string(direct) + " by lookup");
  t.lines.push_back("psi_" + i + "(" + i + ") = j(" + i + ") = k(psi_" + i + "(" + i + ")) = " +
                    std::to_string(via_j) + " by the claim");
  t.inconsistent = direct != via_j && differs == 4;
  t.conclusion = "psi_" + i + "(" + i + ") != psi_" + i + "(" + i + ")  (" + std::to_string(direct) +
                 " != " + std::to_string(via_j) + ")";
  t.lines.push_back(t.conclusion);
  return t;
}

// Accelerating machines with composition asserted: the pipeline
// halting-solver ; negation would be a member i with psi_i = not psi_x(x).
inline Transcript atm_forced_transcript() {
  const SpaceBound bound{8};
  const AtmProgram solver = AtmProgram::halting_solver();
  const AtmProgram neg = AtmProgram::table(parse_tm(catalog::kAtmNegation), "negation");

  Transcript t;
  t.model = "atm-forced-composition";
  const ComposeReport cr = compose_check(solver, neg);
  t.lines.push_back("compose_check(halting-solver, negation): " + std::string(cr.accepted ? "accepted" : "rejected") +
                    " (" + cr.reason + "); property 7 asserted regardless");

  // The forced pipeline does compute not-halts(x, x) on plain machines.
  std::uint64_t agree = 0, checked = 0;
  for (std::uint64_t x = 0; x < 100; ++x) {
    try {
      const PipelineResult p = run_pipeline_forced(solver, neg, Nat(x), bound);
      const bool halts = halting_f(GodelIndex(Nat(x)), Nat(x), ExactTier{bound}) == HaltValue::Halts;
      ++checked;
      agree += is_marked(p.second) == !halts;
    } catch (const OutOfSpace&) {
    }
  }
  t.lines.push_back("forced pipeline i(x) = not psi_x(x) matches the exact decider on " + std::to_string(agree) +
                    " of " + std::to_string(checked) + " in-bound plain machines x < 100");
  t.lines.push_back("claim (closure): i is an accelerating machine with some index e");
  t.lines.push_back("psi_e(e) = i(e) = negation(psi_e(e)); psi_e(e) ranges over {0, 1}");

  bool all_clash = true;
  for (std::uint64_t v = 0; v < 2; ++v) {
    const AtmVerdict nv = atm_run(neg, Nat(v), 0, bound);
    const std::uint64_t out = is_marked(nv) ? 1 : 0;
    t.lines.push_back("case psi_e(e) = " + std::to_string(v) + ": negation machine on " + std::to_string(v) +
                      " outputs " + std::to_string(out) + (replay_verdict(neg, Nat(v), nv) ? " (replayed)" : "") +
                      ", so psi_e(e) = " + std::to_string(out));
    all_clash = all_clash && out != v;
  }
  t.inconsistent = all_clash && !cr.accepted && agree == checked;
  t.conclusion = "psi_e(e) != psi_e(e)  (every value in {0, 1} is sent to the other)";
  t.lines.push_back(t.conclusion);
  return t;
}

}  // namespace detail

inline const std::vector<FlawedModel>& flawed_models() {
  static const std::vector<FlawedModel> models = [] {
    std::vector<FlawedModel> out;
    ModelDescriptor toy{"toy-four-tables", "Four lookup tables claimed closed under their diagonal", "{0..3}",
                        "{0..3}", "table position", {{"standard", detail::all_hold("asserted by the claim")}}, true};
    out.push_back({toy, detail::toy_tables_transcript});
    ModelDescriptor atm{"atm-forced-composition", "Accelerating machines with composition asserted", "N", "{0,1}",
                        "tm-table-numbering", {{"standard", detail::all_hold("asserted by the claim")}}, true};
    out.push_back({atm, detail::atm_forced_transcript});
    for (const auto& m : out) detail::validate(m.descriptor);
    return out;
  }();
  return models;
}

/// For a descriptor claiming all seven properties, derives the clash at its
/// own diagonal index. Consistent registry models are refused.
inline Transcript contradiction_witness(std::string_view name) {
  for (const FlawedModel& f : flawed_models()) {
    if (f.descriptor.name != name) continue;
    for (const Coding& c : f.descriptor.codings)
      if (!c.missing().empty()) throw PreconditionUnmet(std::string(name) + " does not claim all seven properties");
    if (!f.self_evaluator) throw PreconditionUnmet(std::string(name) + " has no executable self-evaluator");
    return f.self_evaluator();
  }
  const ModelDescriptor& m = find_model(name);
  std::string missing;
  for (const Coding& c : m.codings)
    for (int p : c.missing()) missing += (missing.empty() ? "" : ", ") + std::to_string(p);
  throw PreconditionUnmet(m.name + " is consistent: it lacks propert" +
                          std::string(missing.find(',') == std::string::npos ? "y " : "ies ") + missing);
}

}  // namespace diagforge
