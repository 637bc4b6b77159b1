#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "diagforge/atm.hpp"
#include "diagforge/halting.hpp"
#include "diagforge/ittm.hpp"
#include "diagforge/registry.hpp"
#include "diagforge/tm.hpp"

// JSON renderings of results. Field order is fixed (ordered_json), so equal
// values always serialize to equal bytes.
namespace diagforge::report {

using Json = nlohmann::ordered_json;

inline Json nat(const Nat& n) {
  if (n.fits_u64()) return n.to_u64();
  return n.str();
}

inline Json cycle(const Cycle& c) { return {{"cycle_start", c.start}, {"cycle_length", c.length}}; }

inline Json oracle_answer(const OracleAnswer& a) {
  if (const auto* h = std::get_if<Halts>(&a)) return {{"answer", "halts"}, {"certificate", {{"steps", h->steps}}}};
  if (const auto* d = std::get_if<DivergesProven>(&a))
    return {{"answer", "diverges"},
            {"certificate", {{"cycle_start", d->cycle_start}, {"cycle_length", d->cycle_length}}}};
  return {{"answer", "unknown"}, {"certificate", {{"budget", std::get<Unknown>(a).budget}}}};
}

inline Json tape(const TmSpec& spec, const TmConfig& cfg) {
  Json cells = Json::object();
  for (const auto& [cell, sym] : cfg.tape) cells[std::to_string(cell)] = spec.symbol_name(sym);
  return {{"state", spec.state_name(cfg.state)}, {"head", cfg.head}, {"cells", cells}};
}

inline Json run_outcome(const RunOutcome& r) {
  if (const auto* h = std::get_if<Halted>(&r))
    return {{"answer", nat(h->output)}, {"certificate", {{"halted", true}, {"steps", h->steps}}}};
  if (const auto* d = std::get_if<Diverges>(&r))
    return {{"answer", "diverges"}, {"certificate", {{"cycle_start", d->cycle_start}, {"cycle_length", d->cycle_length}}}};
  return {{"answer", "unknown"}, {"certificate", {{"budget", std::get<Unknown>(r).budget}}}};
}

inline Json atm_verdict(const AtmVerdict& v) {
  if (const auto* m = std::get_if<Marked>(&v))
    return {{"answer", "marked"}, {"certificate", {{"marking_step", m->step}}}};
  if (const auto* u = std::get_if<UnmarkedAtBudget>(&v))
    return {{"answer", "unmarked-at-budget"}, {"certificate", {{"budget", u->budget}}}};
  const auto& cert = std::get<UnmarkedProven>(v).certificate;
  if (const auto* h = std::get_if<HaltedUnmarked>(&cert))
    return {{"answer", "unmarked-proven"}, {"certificate", {{"halted_after", h->steps}}}};
  return {{"answer", "unmarked-proven"}, {"certificate", cycle(std::get<Cycle>(cert))}};
}

inline Json tiered(const TieredAnswer& t) {
  Json j = oracle_answer(t.answer);
  j["tier"] = tier_label(t.tier);
  return j;
}

inline Json compose(const ComposeReport& r) {
  Json j{{"answer", r.accepted ? "accept" : "reject"}, {"reason", r.reason}};
  Json cert = Json::object();
  if (r.certified_steps) cert["certified_steps"] = *r.certified_steps;
  if (r.witness_input) cert["witness_input"] = *r.witness_input;
  j["certificate"] = cert;
  return j;
}

inline Json limit_certificate(const LimitCertificate& c) {
  if (const auto* h = std::get_if<HaltedBeforeLimit>(&c)) return {{"halted_after", h->steps}};
  return cycle(std::get<Cycle>(c));
}

inline Json limit(const TmSpec& spec, const LimitOutcome& o, LimitRule rule) {
  if (const auto* u = std::get_if<LimitUnknown>(&o))
    return {{"answer", "unknown"}, {"rule", rule_name(rule)}, {"certificate", {{"escape_step", u->escape_step}}}};
  const auto& r = std::get<LimitResult>(o);
  return {{"answer", tape(spec, r.config)}, {"rule", rule_name(rule)}, {"certificate", limit_certificate(r.certificate)}};
}

inline Json ittm_decision(const IttmDecision& d, LimitRule rule, FlagProtocol p) {
  return {{"answer", d.value},
          {"rule", rule_name(rule)},
          {"protocol", protocol_name(p)},
          {"certificate",
           {{"flag", d.flag}, {"read_at", d.clock.str()}, {"orbit", limit_certificate(d.certificate)}}}};
}

inline Json transcript(const Transcript& t) {
  return {{"model", t.model}, {"lines", t.lines}, {"inconsistent", t.inconsistent}, {"conclusion", t.conclusion}};
}

inline Json properties(const std::array<Property, 7>& ps) {
  Json out = Json::array();
  for (const Property& p : ps) {
    Json e{{"id", p.id}, {"status", status_name(p.status)}, {"justification", p.justification}};
    if (!p.check.empty()) e["check"] = p.check;
    out.push_back(std::move(e));
  }
  return out;
}

/// One ledger entry. `properties` and `missing` describe the model's first
/// coding; models with several codings list all of them under `codings`.
inline Json capability(const CapabilityReport& r) {
  Json codings = Json::array();
  for (const CodingReport& c : r.codings) {
    Json checks = Json::array();
    for (const CheckOutcome& o : c.checks)
      checks.push_back({{"property", o.property}, {"check", o.check}, {"passed", o.result.passed},
                        {"detail", o.result.detail}});
    codings.push_back({{"coding", c.coding}, {"properties", properties(c.properties)}, {"missing", c.missing},
                       {"checks", checks}});
  }
  const CodingReport& first = r.codings.front();
  return {{"model", r.model},           {"title", r.title},
          {"properties", properties(first.properties)}, {"missing", first.missing},
          {"codings", codings},         {"checks_passed", r.checks_passed}};
}

inline Json ledger(const AuditConfig& config = {}) {
  Json models = Json::array();
  for (const ModelDescriptor& m : model_registry()) models.push_back(capability(capability_audit(m, config)));
  return {{"property_names", kPropertyNames}, {"models", models}};
}

}  // namespace diagforge::report
