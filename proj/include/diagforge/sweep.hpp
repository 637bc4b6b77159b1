#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "diagforge/atm.hpp"
#include "diagforge/diagonal.hpp"
#include "diagforge/godel.hpp"
#include "diagforge/halting.hpp"
#include "diagforge/ittm.hpp"
#include "diagforge/report.hpp"

// Index sweeps: run one cross-check per index of a range and tally the
// outcomes. Per-index work is pure, so results are merged in index order and
// the report does not depend on the thread count.
namespace diagforge {

struct IndexRange {
  std::uint64_t begin;
  std::uint64_t end;  // exclusive
};

/// Parses "a..b" (half-open). Empty ranges are rejected.
inline IndexRange parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) throw std::invalid_argument("range must look like a..b: '" + std::string(text) + "'");
  auto num = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad range bound '" + std::string(s) + "'");
    return v;
  };
  IndexRange r{num(text.substr(0, dots)), num(text.substr(dots + 2))};
  if (r.begin >= r.end) throw std::invalid_argument("empty range '" + std::string(text) + "'");
  return r;
}

enum class SweepKind { PrH, PrEval, HaltExact, DiagG, IttmDecide, AtmRun };

inline const std::vector<std::pair<std::string_view, SweepKind>>& sweep_kinds() {
  static const std::vector<std::pair<std::string_view, SweepKind>> kinds = {
      {"pr h", SweepKind::PrH},         {"pr eval", SweepKind::PrEval},         {"halt exact", SweepKind::HaltExact},
      {"diag g", SweepKind::DiagG},     {"ittm decide", SweepKind::IttmDecide}, {"atm run", SweepKind::AtmRun},
  };
  return kinds;
}

inline SweepKind parse_sweep_kind(std::string_view s) {
  for (const auto& [name, kind] : sweep_kinds())
    if (name == s) return kind;
  throw std::invalid_argument("unknown sweep subcommand '" + std::string(s) + "'");
}

inline std::string_view sweep_kind_name(SweepKind k) {
  for (const auto& [name, kind] : sweep_kinds())
    if (kind == k) return name;
  return "?";
}

struct SweepOptions {
  SpaceBound bound{8};
  EvalLimits pr_limits{100'000, 1'000'000};
  std::uint64_t max_arg = 10;     // pr eval: arguments drawn from 0..max_arg
  std::size_t threads = 1;
  std::optional<std::size_t> sample;  // test this many indices drawn from the range
  std::uint64_t seed = 1;
};

enum class Verdict { Agree, Disagree, Unknown, OutOfSpace };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::Disagree: return "disagree";
    case Verdict::Unknown: return "unknown";
    case Verdict::OutOfSpace: return "out_of_space";
  }
  return "?";
}

struct SweepItem {
  std::uint64_t index;
  Verdict verdict;
  report::Json detail;
};

struct SweepSummary {
  std::uint64_t agree = 0, disagree = 0, unknown = 0, out_of_space = 0;
};

struct SweepReport {
  SweepKind kind;
  IndexRange range;
  std::vector<SweepItem> items;
  SweepSummary summary;
};

namespace detail {

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t x) { return splitmix64(seed ^ splitmix64(x)); }

inline SweepItem sweep_one(SweepKind kind, std::uint64_t x, const SweepOptions& o) {
  using report::Json;
  const GodelIndex gx{Nat(x)};
  try {
    switch (kind) {
      case SweepKind::PrH: {
        const Nat v = universal_pr_eval(gx, Nat(x), o.pr_limits);
        const Nat h = diagonal_h(gx, o.pr_limits);
        const bool ok = h == v + Nat(1) && h != v;
        return {x, ok ? Verdict::Agree : Verdict::Disagree, {{"psi", report::nat(v)}, {"h", report::nat(h)}}};
      }
      case SweepKind::PrEval: {
        const Nat a(mix(o.seed, x) % (o.max_arg + 1));
        const PrTerm t = decode_index(gx);
        const Nat u = universal_pr_eval(gx, a, o.pr_limits);
        const auto args = coerce_unary(a, t.arity());
        const Nat e = eval_pr(t, args, o.pr_limits);
        return {x, u == e ? Verdict::Agree : Verdict::Disagree,
                {{"arg", report::nat(a)}, {"universal", report::nat(u)}, {"direct", report::nat(e)}}};
      }
      case SweepKind::HaltExact: {
        const TmSpec spec = decode_tm(gx);
        const TmConfig start = initial_config(spec, Nat(x));
        const OracleAnswer a = lba_halt_decide(spec, start, o.bound);
        const bool ok = replay_answer(spec, start, a) && !std::holds_alternative<Unknown>(a);
        return {x, ok ? Verdict::Agree : Verdict::Disagree, report::oracle_answer(a)};
      }
      case SweepKind::DiagG: {
        const GResult g = diagonal_g(gx, o.bound);
        const OracleAnswer a = lba_halt_decide(gx, Nat(x), o.bound);
        const auto j = build_j(instantiate_g_as_j(o.bound));
        const JResult<Nat> jv = j(Nat(x));
        const bool g_zero = std::holds_alternative<GValue>(g);
        const bool j_zero = std::holds_alternative<JValue<Nat>>(jv);
        const bool ok = g_zero == std::holds_alternative<DivergesProven>(a) && g_zero == j_zero &&
                        (std::holds_alternative<JDiverges>(jv) || std::get<JValue<Nat>>(jv).value == Nat(0));
        return {x, ok ? Verdict::Agree : Verdict::Disagree,
                {{"g", g_zero ? Json(0) : Json("diverges")}, {"decider", report::oracle_answer(a)["answer"]}}};
      }
      case SweepKind::IttmDecide: {
        const int expect = halting_f(gx, Nat(x), ExactTier{o.bound}) == HaltValue::Halts ? 1 : 0;
        const int sup = ittm_decide_halting(gx, o.bound, LimitRule::Limsup);
        const int inf = ittm_decide_halting(gx, o.bound, LimitRule::Liminf);
        return {x, sup == expect && inf == expect ? Verdict::Agree : Verdict::Disagree,
                {{"limsup", sup}, {"liminf", inf}, {"decider", expect}}};
      }
      case SweepKind::AtmRun: {
        const AtmProgram solver = AtmProgram::halting_solver();
        const AtmVerdict v = atm_run(solver, Nat(x), 0, o.bound);
        const bool halts = halting_f(gx, Nat(x), ExactTier{o.bound}) == HaltValue::Halts;
        const bool ok = is_marked(v) == halts && replay_verdict(solver, Nat(x), v);
        return {x, ok ? Verdict::Agree : Verdict::Disagree, report::atm_verdict(v)};
      }
    }
  } catch (const diagforge::OutOfSpace& e) {
    return {x, Verdict::OutOfSpace, {{"error", e.what()}}};
  } catch (const ResourceExhausted& e) {
    return {x, Verdict::Unknown, {{"error", e.what()}}};
  }
  throw std::logic_error("unreachable");
}

inline std::vector<std::uint64_t> sweep_indices(const IndexRange& r, const SweepOptions& o) {
  std::vector<std::uint64_t> xs;
  const std::uint64_t n = r.end - r.begin;
  if (!o.sample || *o.sample >= n) {
    for (std::uint64_t x = r.begin; x < r.end; ++x) xs.push_back(x);
    return xs;
  }
  // Floyd's algorithm: a uniform sample without replacement, then sorted.
  std::mt19937_64 rng(o.seed);
  std::vector<std::uint64_t> picked;
  for (std::uint64_t j = n - *o.sample; j < n; ++j) {
    const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (std::find(picked.begin(), picked.end(), t) == picked.end())
      picked.push_back(t);
    else
      picked.push_back(j);
  }
  std::sort(picked.begin(), picked.end());
  for (std::uint64_t p : picked) xs.push_back(r.begin + p);
  return xs;
}

}  // namespace detail

inline SweepReport run_sweep(SweepKind kind, IndexRange range, const SweepOptions& o = {}) {
  const std::vector<std::uint64_t> xs = detail::sweep_indices(range, o);
  std::vector<std::optional<SweepItem>> slots(xs.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(o.threads, xs.size()));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < xs.size(); i += workers) slots[i] = detail::sweep_one(kind, xs[i], o);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  SweepReport rep{kind, range, {}, {}};
  for (auto& s : slots) {
    switch (s->verdict) {
      case Verdict::Agree: ++rep.summary.agree; break;
      case Verdict::Disagree: ++rep.summary.disagree; break;
      case Verdict::Unknown: ++rep.summary.unknown; break;
      case Verdict::OutOfSpace: ++rep.summary.out_of_space; break;
    }
    rep.items.push_back(std::move(*s));
  }
  return rep;
}

namespace report {

inline Json sweep(const SweepReport& r, bool with_items = true) {
  Json j{{"subcommand", std::string(sweep_kind_name(r.kind))},
         {"range", std::to_string(r.range.begin) + ".." + std::to_string(r.range.end)},
         {"summary",
          {{"agree", r.summary.agree},
           {"disagree", r.summary.disagree},
           {"unknown", r.summary.unknown},
           {"out_of_space", r.summary.out_of_space}}}};
  if (with_items) {
    Json items = Json::array();
    for (const SweepItem& it : r.items)
      items.push_back({{"x", it.index}, {"verdict", verdict_name(it.verdict)}, {"detail", it.detail}});
    j["items"] = std::move(items);
  }
  return j;
}

}  // namespace report

}  // namespace diagforge
