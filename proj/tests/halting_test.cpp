#include <gtest/gtest.h>

#include "support.hpp"

using namespace diagforge;
using testsupport::RefAnswer;

namespace {

// Runs the exact tier and folds OutOfSpace into the reference vocabulary.
testsupport::RefRun exact(const TmSpec& spec, const TmConfig& start, SpaceBound b) {
  try {
    const OracleAnswer a = lba_halt_decide(spec, start, b);
    if (const auto* h = std::get_if<Halts>(&a)) return {RefAnswer::Halts, h->steps, 0};
    return {RefAnswer::Diverges, 0, 0};
  } catch (const OutOfSpace& e) {
    return {RefAnswer::OutOfSpace, e.step(), 0};
  }
}

}  // namespace

TEST(Region, FollowsOccupiedSpanPlusWorkspace) {
  const TmSpec spec = catalog::load(catalog::kSelfLoop);
  const Region r = region_for(initial_config(spec, Nat(2)), SpaceBound(5));
  EXPECT_EQ(r.lo, -4);  // one delimiter left of the input ones at -3..-1
  EXPECT_EQ(r.hi, 4);   // head at 0 plus 4 more cells
  EXPECT_EQ(r.size(), 9u);
  const Region blank = region_for(blank_config(spec), SpaceBound(1));
  EXPECT_EQ(blank.lo, -1);
  EXPECT_EQ(blank.hi, 0);
  EXPECT_THROW(SpaceBound(0), std::invalid_argument);
}

TEST(ExactTier, MatchesVisitedSetReferenceOnRandomMachines) {
  auto& rng = testsupport::rng_for(51);
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 3000; ++i) {
    const TmSpec spec = testsupport::random_tm(rng, 4, i % 3 == 0, 6);
    const TmConfig start = initial_config(spec, Nat(testsupport::uniform(rng, 0, 4)));
    const SpaceBound b(testsupport::uniform(rng, 1, 8));
    const auto ref = testsupport::ref_bounded(spec, start, region_for(start, b));
    const auto got = exact(spec, start, b);
    ASSERT_EQ(static_cast<int>(got.answer), static_cast<int>(ref.answer)) << print_tm(spec);
    if (ref.answer == RefAnswer::Halts) { EXPECT_EQ(got.steps, ref.steps); }
    ++counts[static_cast<int>(ref.answer)];
  }
  // the generator must exercise every outcome
  EXPECT_GT(counts[0], 100);
  EXPECT_GT(counts[1], 100);
  EXPECT_GT(counts[2], 100);
}

TEST(ExactTier, MatchesReferenceOnEnumeratedMachines) {
  const SpaceBound b(8);
  for (std::uint64_t x = 0; x < 500; ++x) {
    const TmSpec spec = decode_tm(GodelIndex(Nat(x)));
    for (std::uint64_t y : {x, x % 7}) {
      const TmConfig start = initial_config(spec, Nat(y));
      const auto ref = testsupport::ref_bounded(spec, start, region_for(start, b));
      ASSERT_EQ(static_cast<int>(exact(spec, start, b).answer), static_cast<int>(ref.answer)) << x << "," << y;
    }
  }
}

TEST(ExactTier, CertificatesReplayOnTheSparseSimulator) {
  const SpaceBound b(8);
  int replayed = 0;
  for (std::uint64_t x = 0; x < 500; ++x) {
    for (std::uint64_t y = 0; y < 5; ++y) {
      const TmSpec spec = decode_tm(GodelIndex(Nat(x)));
      const TmConfig start = initial_config(spec, Nat(y));
      try {
        const OracleAnswer a = lba_halt_decide(spec, start, b);
        ASSERT_TRUE(replay_answer(spec, start, a)) << x << "," << y;
        ++replayed;
      } catch (const OutOfSpace&) {
      }
    }
  }
  EXPECT_GT(replayed, 1000);
}

TEST(ExactTier, ForgedCertificatesFailReplay) {
  const TmSpec alt = catalog::load(catalog::kAlternator);
  const TmConfig s = initial_config(alt, Nat(0));
  EXPECT_FALSE(replay_answer(alt, s, Halts{3}));
  EXPECT_TRUE(replay_answer(alt, s, DivergesProven{0, 2}));
  EXPECT_FALSE(replay_answer(alt, s, DivergesProven{0, 1}));
  const TmSpec halt = catalog::load(catalog::kSuccessor);
  const TmConfig h = initial_config(halt, Nat(2));
  EXPECT_TRUE(replay_answer(halt, h, Halts{1}));
  EXPECT_FALSE(replay_answer(halt, h, Halts{0}));
  EXPECT_FALSE(replay_answer(halt, h, DivergesProven{0, 1}));
}

TEST(ExactTier, RunawayIsOutOfSpaceAtTheBoundary) {
  const TmSpec spec = catalog::load(catalog::kRunaway);
  const TmConfig start = blank_config(spec);
  try {
    lba_halt_decide(spec, start, SpaceBound(6));
    FAIL() << "expected OutOfSpace";
  } catch (const OutOfSpace& e) {
    EXPECT_EQ(e.cell(), 6);
    EXPECT_EQ(e.step(), 6u);
  }
}

TEST(SparseEngine, AgreesWithDenseEngine) {
  auto& rng = testsupport::rng_for(52);
  for (int i = 0; i < 1500; ++i) {
    const TmSpec spec = testsupport::random_tm(rng, 3, true, 6);
    const TmConfig start = initial_config(spec, Nat(testsupport::uniform(rng, 0, 3)));
    const Region r = region_for(start, SpaceBound(testsupport::uniform(rng, 1, 6)));
    const BoundedMachine dense(spec, r);
    const SparseBoundedMachine sparse(spec, r);
    const Trajectory a = classify(dense, dense.load(start), 1'000'000);
    const Trajectory b = classify(sparse, SparseBoundedMachine::Config{start}, 1'000'000);
    ASSERT_EQ(a.index(), b.index());
    if (const auto* c = std::get_if<Cycle>(&a)) { EXPECT_EQ(*c, std::get<Cycle>(b)); }
    if (const auto* s = std::get_if<Stopped>(&a)) { EXPECT_EQ(s->steps, std::get<Stopped>(b).steps); }
  }
}

TEST(SemiTier, NeverClaimsDivergence) {
  for (std::uint64_t x = 0; x < 400; ++x) {
    const OracleAnswer a = semi_decide_halt(GodelIndex(Nat(x)), Nat(x), 300);
    ASSERT_FALSE(std::holds_alternative<DivergesProven>(a));
    EXPECT_NE(halting_f(GodelIndex(Nat(x)), Nat(x), SemiTier{300}), HaltValue::Diverges);
  }
}

TEST(SemiTier, AgreesWithExactTierWhenItAnswers) {
  for (std::uint64_t x = 0; x < 500; ++x) {
    const GodelIndex gx{Nat(x)};
    const HaltValue semi = halting_f(gx, Nat(x), SemiTier{2000});
    try {
      const OracleAnswer ex = lba_halt_decide(gx, Nat(x), SpaceBound(8));
      if (semi == HaltValue::Halts) {
        ASSERT_TRUE(std::holds_alternative<Halts>(ex)) << x;
      }
      if (const auto* h = std::get_if<Halts>(&ex)) {
        // given enough budget the semi tier sees the same halt
        EXPECT_TRUE(std::holds_alternative<Halts>(semi_decide_halt(gx, Nat(x), h->steps))) << x;
      }
    } catch (const OutOfSpace&) {
    }
  }
}

TEST(DiagonalG, IsZeroExactlyWhenTheMachineDivergesOnItsOwnIndex) {
  const SpaceBound b(8);
  int zeros = 0, markers = 0;
  for (std::uint64_t x = 0; x < 1000; ++x) {
    const GodelIndex gx{Nat(x)};
    const TmSpec spec = decode_tm(gx);
    const TmConfig start = initial_config(spec, gx.value);
    const auto ref = testsupport::ref_bounded(spec, start, region_for(start, b));
    if (ref.answer == RefAnswer::OutOfSpace) {
      EXPECT_THROW(diagonal_g(gx, b), OutOfSpace);
      continue;
    }
    const GResult g = diagonal_g(gx, b);
    if (ref.answer == RefAnswer::Diverges) {
      ASSERT_TRUE(std::holds_alternative<GValue>(g)) << x;
      EXPECT_EQ(std::get<GValue>(g).value, Nat(0));
      ++zeros;
    } else {
      ASSERT_TRUE(std::holds_alternative<DivergesMarker>(g)) << x;
      EXPECT_EQ(std::get<DivergesMarker>(g).machine_halt_steps, ref.steps);
      ++markers;
    }
  }
  EXPECT_GT(zeros, 50);
  EXPECT_GT(markers, 50);
}
