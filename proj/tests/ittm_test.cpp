#include <gtest/gtest.h>

#include "support.hpp"

using namespace diagforge;
using testsupport::RefAnswer;

namespace {

// Cell 0 alternates 1, blank, 1, ...
constexpr std::string_view kBlinker = R"(start: a
a _ -> b 1 S
b 1 -> a _ S
)";

// Blinks, then at the limit halts iff cell 0 reads 1.
constexpr std::string_view kBlinkThenCheck = R"(start: a
limit: c
halt: done
a _ -> b 1 S
b 1 -> a _ S
c _ -> c _ S
)";

// Reference limit: find the cycle with a history map, then take per-cell
// extremes over one period of the sparse run.
std::optional<TmConfig> ref_limit(const TmSpec& spec, TmConfig c, Region region, LimitRule rule) {
  using Key = std::tuple<StateId, std::int64_t, std::map<std::int64_t, Symbol>>;
  std::map<Key, std::uint64_t> first;
  std::vector<TmConfig> history;
  for (;;) {
    const Key k{c.state, c.head, c.tape};
    if (first.count(k)) break;
    first[k] = history.size();
    history.push_back(c);
    if (!advance(spec, c)) return c;  // halted: frozen
    if (!region.contains(c.head)) return std::nullopt;
  }
  const std::uint64_t mu = first[{c.state, c.head, c.tape}];
  std::map<std::int64_t, std::pair<Symbol, Symbol>> range;
  for (std::int64_t cell = region.lo; cell <= region.hi; ++cell) {
    Symbol lo = UINT32_MAX, hi = 0;
    for (std::size_t i = mu; i < history.size(); ++i) {
      lo = std::min(lo, history[i].read(cell));
      hi = std::max(hi, history[i].read(cell));
    }
    range[cell] = {lo, hi};
  }
  TmConfig out;
  for (const auto& [cell, r] : range) out.write(cell, rule == LimitRule::Limsup ? r.second : r.first);
  out.head = 0;
  out.state = spec.limit_state().value_or(spec.start());
  return out;
}

}  // namespace

TEST(OrdinalClock, FormattingAndOrder) {
  EXPECT_EQ((OrdinalClock{0, 7}).str(), "7");
  EXPECT_EQ((OrdinalClock{1, 0}).str(), "w");
  EXPECT_EQ((OrdinalClock{2, 3}).str(), "w*2+3");
  EXPECT_TRUE((OrdinalClock{1, 0}).is_limit());
  EXPECT_FALSE((OrdinalClock{0, 0}).is_limit());
  EXPECT_FALSE((OrdinalClock{1, 1}).is_limit());
  EXPECT_LT((OrdinalClock{0, 1000000}), (OrdinalClock{1, 0}));
  EXPECT_LT((OrdinalClock{1, 5}), (OrdinalClock{2, 0}));
  EXPECT_EQ((OrdinalClock{1, 4}).next_limit(), (OrdinalClock{2, 0}));
}

TEST(IttmStep, HaltedMachineIsFrozen) {
  const TmSpec spec = catalog::load(catalog::kImmediateHalt);
  const auto [cfg, clock] = ittm_step(spec, blank_config(spec), OrdinalClock{1, 2});
  EXPECT_EQ(clock, (OrdinalClock{1, 2}));
  EXPECT_TRUE(cfg.same_state(blank_config(spec)));
  const TmSpec loop = catalog::load(catalog::kSelfLoop);
  EXPECT_EQ(ittm_step(loop, blank_config(loop), OrdinalClock{1, 2}).second, (OrdinalClock{1, 3}));
}

TEST(Limit, BlinkerDependsOnTheRule) {
  const TmSpec spec = parse_tm(kBlinker);
  const TmConfig start = blank_config(spec);
  for (LimitRule rule : {LimitRule::Limsup, LimitRule::Liminf}) {
    const LimitOutcome o = limit_config(spec, start, SpaceBound(2), rule);
    ASSERT_TRUE(std::holds_alternative<LimitResult>(o));
    const auto& r = std::get<LimitResult>(o);
    EXPECT_EQ(r.config.read(0), rule == LimitRule::Limsup ? kOne : kBlank);
    EXPECT_EQ(r.config.head, 0);
    EXPECT_EQ(r.config.state, spec.start());
    EXPECT_EQ(std::get<Cycle>(r.certificate), (Cycle{0, 2}));
    EXPECT_TRUE(verify_limit(spec, start, rule, r));
  }
}

TEST(Limit, MatchesReferenceOnRandomMachines) {
  auto& rng = testsupport::rng_for(71);
  int checked = 0;
  for (int i = 0; i < 1500; ++i) {
    const TmSpec spec = testsupport::random_tm(rng, 3, i % 2 == 0, 6);
    const TmConfig start = initial_config(spec, Nat(testsupport::uniform(rng, 0, 3)));
    const SpaceBound b(testsupport::uniform(rng, 1, 6));
    const Region region = region_for(start, b);
    for (LimitRule rule : {LimitRule::Limsup, LimitRule::Liminf}) {
      const LimitOutcome o = limit_config(spec, start, b, rule);
      const auto ref = ref_limit(spec, start, region, rule);
      ASSERT_EQ(std::holds_alternative<LimitResult>(o), ref.has_value()) << print_tm(spec);
      if (!ref) continue;
      const auto& r = std::get<LimitResult>(o);
      ASSERT_TRUE(r.config.same_state(*ref)) << print_tm(spec);
      ASSERT_TRUE(verify_limit(spec, start, rule, r));
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Limit, ForgedLimitsFailVerification) {
  const TmSpec spec = parse_tm(kBlinker);
  const TmConfig start = blank_config(spec);
  auto r = std::get<LimitResult>(limit_config(spec, start, SpaceBound(2), LimitRule::Limsup));
  EXPECT_FALSE(verify_limit(spec, start, LimitRule::Liminf, r));  // wrong rule for this value
  LimitResult bad = r;
  bad.certificate = Cycle{0, 1};
  EXPECT_FALSE(verify_limit(spec, start, LimitRule::Limsup, bad));
  bad = r;
  bad.config.write(1, kOne);
  EXPECT_FALSE(verify_limit(spec, start, LimitRule::Limsup, bad));
}

TEST(TransfiniteRun, LimitStateSeesTheRuleBias) {
  const TmSpec spec = parse_tm(kBlinkThenCheck);
  const TmConfig start = blank_config(spec);
  const IttmOutcome sup = ittm_run(spec, start, SpaceBound(2), LimitRule::Limsup);
  ASSERT_TRUE(std::holds_alternative<IttmHalted>(sup));
  EXPECT_EQ(std::get<IttmHalted>(sup).clock, (OrdinalClock{1, 0}));
  const IttmOutcome inf = ittm_run(spec, start, SpaceBound(2), LimitRule::Liminf, 3);
  ASSERT_TRUE(std::holds_alternative<IttmCapReached>(inf));
  EXPECT_EQ(std::get<IttmCapReached>(inf).cap, (OrdinalClock{3, 0}));
}

TEST(TransfiniteRun, FiniteHaltAndEscape) {
  const TmSpec succ = catalog::load(catalog::kSuccessor);
  const IttmOutcome h = ittm_run(succ, initial_config(succ, Nat(2)), SpaceBound(4), LimitRule::Limsup);
  ASSERT_TRUE(std::holds_alternative<IttmHalted>(h));
  EXPECT_EQ(std::get<IttmHalted>(h).clock, (OrdinalClock{0, 1}));
  EXPECT_EQ(count_ones(std::get<IttmHalted>(h).config), 4u);
  const TmSpec run = catalog::load(catalog::kRunaway);
  const IttmOutcome e = ittm_run(run, blank_config(run), SpaceBound(4), LimitRule::Limsup);
  ASSERT_TRUE(std::holds_alternative<IttmOutOfBound>(e));
  EXPECT_EQ(std::get<IttmOutOfBound>(e).clock, (OrdinalClock{0, 4}));
}

TEST(IttmDecide, MatchesReferenceUnderEveryRuleAndProtocol) {
  const SpaceBound b(8);
  int decided = 0;
  for (std::uint64_t x = 0; x < 500; ++x) {
    const GodelIndex gx{Nat(x)};
    const TmSpec spec = decode_tm(gx);
    const TmConfig start = initial_config(spec, gx.value);
    const auto ref = testsupport::ref_bounded(spec, start, region_for(start, b));
    for (LimitRule rule : {LimitRule::Limsup, LimitRule::Liminf})
      for (FlagProtocol p : {FlagProtocol::Settle, FlagProtocol::Blink}) {
        if (ref.answer == RefAnswer::OutOfSpace) {
          EXPECT_THROW(ittm_decide_halting(gx, b, rule, p), OutOfSpace);
          continue;
        }
        const IttmDecision d = ittm_decide_halting_detail(gx, b, rule, p);
        ASSERT_EQ(d.value, ref.answer == RefAnswer::Halts ? 1 : 0) << x;
        if (d.value == 1) {
          EXPECT_EQ(d.clock, (OrdinalClock{0, ref.steps + 1}));  // plus the step that sets the flag
        } else {
          EXPECT_EQ(d.clock, (OrdinalClock{1, 0}));
        }
      }
    if (ref.answer != RefAnswer::OutOfSpace) ++decided;
  }
  EXPECT_GT(decided, 250);
}

TEST(IttmDecide, BiasChangesFlagsButNotDecisions) {
  const SpaceBound b(8);
  for (std::uint64_t x = 0; x < 300; ++x) {
    try {
      const BiasReport blink = bias_invariance_check(GodelIndex(Nat(x)), b, FlagProtocol::Blink);
      EXPECT_TRUE(blink.decisions_equal) << x;
      EXPECT_FALSE(blink.flags_equal) << x;
      const BiasReport settle = bias_invariance_check(GodelIndex(Nat(x)), b, FlagProtocol::Settle);
      EXPECT_TRUE(settle.decisions_equal);
      EXPECT_TRUE(settle.flags_equal);
    } catch (const OutOfSpace&) {
    }
  }
  EXPECT_EQ(halt_polarity(LimitRule::Limsup, FlagProtocol::Blink), kBlank);
  EXPECT_EQ(halt_polarity(LimitRule::Liminf, FlagProtocol::Blink), kOne);
}
