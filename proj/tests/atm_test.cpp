#include <gtest/gtest.h>

#include "support.hpp"

using namespace diagforge;
using testsupport::RefAnswer;

namespace {

AtmProgram prog(std::string_view src, const char* name) { return AtmProgram::table(catalog::load(src), name); }

}  // namespace

TEST(AtmLayout, OutputSquareIsUnderTheHead) {
  const TmConfig c = atm_initial_config(catalog::load(catalog::kAtmNegation), Nat(2));
  EXPECT_EQ(c.head, kOutputCell);
  EXPECT_EQ(c.read(kOutputCell), kBlank);
  for (std::int64_t cell = 1; cell <= 3; ++cell) { EXPECT_EQ(c.read(cell), kOne); }
  EXPECT_EQ(c.tape.size(), 3u);
}

TEST(AtmRun, NegationMarksOnlyOnZero) {
  const AtmProgram neg = prog(catalog::kAtmNegation, "negation");
  for (std::uint64_t n = 0; n < 10; ++n) {
    for (std::optional<SpaceBound> b : {std::optional<SpaceBound>{}, std::optional<SpaceBound>{SpaceBound(8)}}) {
      const AtmVerdict v = atm_run(neg, Nat(n), 100, b);
      EXPECT_EQ(is_marked(v), n == 0) << n;
      EXPECT_TRUE(replay_verdict(neg, Nat(n), v));
      if (n == 0) { EXPECT_EQ(std::get<Marked>(v).step, 5u); }
    }
  }
  const AtmVerdict one = atm_run(neg, Nat(1), 0, SpaceBound(8));
  ASSERT_TRUE(std::holds_alternative<UnmarkedProven>(one));
  EXPECT_EQ(std::get<HaltedUnmarked>(std::get<UnmarkedProven>(one).certificate).steps, 3u);
}

TEST(AtmRun, MarkNowAndNeverMarks) {
  const AtmProgram now = prog(catalog::kAtmMarkNow, "now");
  EXPECT_EQ(std::get<Marked>(atm_run(now, Nat(4), 10)).step, 1u);
  const AtmProgram never = prog(catalog::kAtmNeverMarks, "never");
  const AtmVerdict budget = atm_run(never, Nat(4), 50);
  EXPECT_EQ(std::get<UnmarkedAtBudget>(budget).budget, 50u);
  const AtmVerdict exact = atm_run(never, Nat(4), 0, SpaceBound(4));
  const auto& cert = std::get<UnmarkedProven>(exact).certificate;
  ASSERT_TRUE(std::holds_alternative<Cycle>(cert));
  EXPECT_EQ(std::get<Cycle>(cert), (Cycle{1, 1}));
  EXPECT_TRUE(replay_verdict(never, Nat(4), exact));
}

TEST(AtmRun, ForgedVerdictsFailReplay) {
  const AtmProgram neg = prog(catalog::kAtmNegation, "negation");
  EXPECT_FALSE(replay_verdict(neg, Nat(0), Marked{4}));
  EXPECT_FALSE(replay_verdict(neg, Nat(1), Marked{3}));
  EXPECT_FALSE(replay_verdict(neg, Nat(0), UnmarkedProven{HaltedUnmarked{5}}));
  EXPECT_FALSE(replay_verdict(neg, Nat(1), UnmarkedProven{Cycle{0, 1}}));
  const AtmProgram solver = AtmProgram::halting_solver();
  EXPECT_FALSE(replay_verdict(solver, Nat(0), UnmarkedProven{Cycle{0, 1}}));  // machine 0 halts at once
  EXPECT_TRUE(replay_verdict(solver, Nat(0), Marked{1}));
}

TEST(AtmRun, EraserViolatesWriteOnce) {
  const AtmProgram eraser = prog(catalog::kAtmEraser, "eraser");
  EXPECT_THROW(atm_run(eraser, Nat(0), 100), WriteOnceViolation);
  EXPECT_THROW(atm_run(eraser, Nat(0), 0, SpaceBound(4)), WriteOnceViolation);
  const WriteOnceReport w = validate_write_once(eraser);
  EXPECT_FALSE(w.ok);
  EXPECT_EQ(w.input, 0u);
  EXPECT_EQ(w.step, 2u);
  EXPECT_TRUE(validate_write_once(prog(catalog::kAtmNegation, "negation")).ok);
  EXPECT_TRUE(validate_write_once(AtmProgram::halting_solver()).ok);
}

TEST(AtmRun, WriteOnceRuleOnRandomTables) {
  // Independent check: simulate directly and watch cell 0.
  auto& rng = testsupport::rng_for(61);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const TmSpec spec = testsupport::random_tm(rng, 3, true, 5);
    TmConfig c = atm_initial_config(spec, Nat(1));
    bool bad = false;
    for (int t = 0; t < 200 && !bad; ++t) {
      const Symbol before = c.read(kOutputCell);
      if (!advance(spec, c)) break;
      const Symbol after = c.read(kOutputCell);
      bad = before != after && !(before == kBlank && after == kOne);
    }
    bool threw = false;
    try {
      atm_run(AtmProgram::table(spec), Nat(1), 200);
    } catch (const WriteOnceViolation&) {
      threw = true;
    }
    ASSERT_EQ(threw, bad) << print_tm(spec);
    violations += bad;
  }
  EXPECT_GT(violations, 50);
}

TEST(HaltingSolver, MatchesExactTierAndReference) {
  const AtmProgram solver = AtmProgram::halting_solver();
  const SpaceBound b(8);
  int decided = 0;
  for (std::uint64_t x = 0; x < 500; ++x) {
    const GodelIndex gx{Nat(x)};
    const TmSpec spec = decode_tm(gx);
    const TmConfig start = initial_config(spec, gx.value);
    const auto ref = testsupport::ref_bounded(spec, start, region_for(start, b));
    if (ref.answer == RefAnswer::OutOfSpace) {
      EXPECT_THROW(atm_run(solver, gx.value, 0, b), OutOfSpace);
      continue;
    }
    const AtmVerdict v = atm_run(solver, gx.value, 0, b);
    ++decided;
    ASSERT_EQ(is_marked(v), ref.answer == RefAnswer::Halts) << x;
    ASSERT_EQ(is_marked(v), halting_f(gx, gx.value, ExactTier{b}) == HaltValue::Halts);
    if (is_marked(v)) { EXPECT_EQ(std::get<Marked>(v).step, ref.steps + 1); }
    EXPECT_TRUE(replay_verdict(solver, gx.value, v));
  }
  EXPECT_GT(decided, 250);
}

TEST(HaltingSolver, BudgetModeOnlyEverMarks) {
  const AtmProgram solver = AtmProgram::halting_solver();
  for (std::uint64_t x = 0; x < 200; ++x) {
    const AtmVerdict v = atm_run(solver, Nat(x), 500);
    EXPECT_FALSE(std::holds_alternative<UnmarkedProven>(v));
    const bool halts = std::holds_alternative<Halted>(run_bounded(decode_tm(GodelIndex(Nat(x))), Nat(x), 500));
    EXPECT_EQ(is_marked(v), halts);
  }
}

TEST(ReCharacteristic, MarksExactlyOnAcceptedInputs) {
  const TmSpec even = catalog::load(catalog::kEvenSemiDecider);
  for (std::uint64_t n = 0; n < 12; ++n) {
    EXPECT_EQ(is_marked(re_characteristic(even, Nat(n), 0, SpaceBound(4))), n % 2 == 0);
    EXPECT_EQ(is_marked(re_characteristic(even, Nat(n), 1000)), n % 2 == 0);
  }
}

TEST(Composition, SolverThenNegationIsRejected) {
  const ComposeReport r = compose_check(AtmProgram::halting_solver(), prog(catalog::kAtmNegation, "negation"),
                                        CompositionDomain{15, SpaceBound(8)});
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.reason, kExternalTimeReason);
  ASSERT_TRUE(r.witness_input);
  // the witness really does run forever internally
  const AtmVerdict v = atm_run(AtmProgram::halting_solver(), Nat(*r.witness_input), 0, SpaceBound(8));
  EXPECT_TRUE(std::holds_alternative<UnmarkedProven>(v));
  EXPECT_THROW(run_pipeline(AtmProgram::halting_solver(), prog(catalog::kAtmNegation, "negation"), Nat(0),
                            CompositionDomain{15, SpaceBound(8)}),
               PreconditionUnmet);
}

TEST(Composition, FinitePipelinesAreAccepted) {
  const AtmProgram neg = prog(catalog::kAtmNegation, "negation");
  const AtmProgram all = prog(catalog::kAtmAcceptAll, "accept-all");
  const ComposeReport r = compose_check(neg, neg);
  EXPECT_TRUE(r.accepted) << r.reason;
  EXPECT_EQ(r.certified_steps, 5u);
  const ComposeReport r2 = compose_check(all, neg);
  EXPECT_TRUE(r2.accepted);
  EXPECT_EQ(r2.certified_steps, 3u);
  for (std::uint64_t n = 0; n < 6; ++n) {
    const PipelineResult p = run_pipeline(neg, neg, Nat(n));
    EXPECT_EQ(p.intermediate, Nat(n == 0 ? 1 : 0));
    EXPECT_EQ(is_marked(p.second), n != 0);  // neg(neg(n)) marks iff neg(n) == 0
    const PipelineResult q = run_pipeline(all, neg, Nat(n));
    EXPECT_EQ(q.intermediate, Nat(1));
    EXPECT_FALSE(is_marked(q.second));
  }
}

TEST(Composition, EraserStageIsRejected) {
  const ComposeReport r = compose_check(prog(catalog::kAtmEraser, "eraser"), prog(catalog::kAtmNegation, "neg"));
  EXPECT_FALSE(r.accepted);
  EXPECT_NE(r.reason.find("write-once"), std::string::npos);
}

TEST(Composition, EscapeIsNotCertified) {
  const ComposeReport r = compose_check(AtmProgram::table(catalog::load(catalog::kRunaway), "runaway"),
                                        prog(catalog::kAtmNegation, "neg"), CompositionDomain{3, SpaceBound(4)});
  // runaway writes 1 to the output square and never changes it again
  EXPECT_FALSE(r.accepted);
  EXPECT_NE(r.reason.find("not certified finite"), std::string::npos);
}

TEST(InternalHalting, TiersAreLabelled) {
  const AtmProgram solver = AtmProgram::halting_solver();
  for (std::uint64_t x = 0; x < 200; ++x) {
    try {
      const TieredAnswer t = internal_halt_query(solver, Nat(x), SpaceBound(8));
      const AnswerTier want =
          std::holds_alternative<Halts>(t.answer) ? AnswerTier::AcceleratingMachine : AnswerTier::ExactDecider;
      EXPECT_EQ(t.tier, want);
    } catch (const OutOfSpace&) {
    }
  }
  EXPECT_STREQ(tier_label(AnswerTier::ExactDecider), "exact-decider");
}

TEST(OracleMachine, GMachineComputesG) {
  const OracleMachine om = g_oracle_machine(SpaceBound(8));
  int compared = 0;
  for (std::uint64_t x = 0; x < 200; ++x) {
    GResult g;
    try {
      g = diagonal_g(GodelIndex(Nat(x)), SpaceBound(8));
    } catch (const OutOfSpace&) {
      continue;
    }
    ++compared;
    const OracleAnswer a = oracle_machine_decide(om, Nat(x), SpaceBound(x + 4));
    EXPECT_EQ(std::holds_alternative<Halts>(a), std::holds_alternative<GValue>(g)) << x;
    const RunOutcome r = run_oracle_machine(om, Nat(x), 1000);
    if (std::holds_alternative<GValue>(g)) {
      ASSERT_TRUE(std::holds_alternative<Halted>(r));
      EXPECT_EQ(std::get<Halted>(r).output, Nat(0));
    } else {
      EXPECT_TRUE(std::holds_alternative<Unknown>(r));
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(OracleMachine, QueryStateMayNotHaveRules) {
  EXPECT_THROW(make_oracle_machine(parse_tm("start: ask\nask _ -> ask _ S\nyes _ -> yes _ S\nno _ -> no _ S\n"), "ask",
                                   "yes", "no", SpaceBound(4)),
               std::invalid_argument);
  EXPECT_THROW(make_oracle_machine(parse_tm("start: q0\n"), "ask", "yes", "no", SpaceBound(4)), std::invalid_argument);
}
