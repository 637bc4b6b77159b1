#include <gtest/gtest.h>

#include "support.hpp"

using namespace diagforge;
using namespace diagforge::coding;

TEST(Pairing, FirstValuesFollowDiagonals) {
  // (0,0) (1,0) (0,1) (2,0) (1,1) (0,2) ...
  const std::vector<std::pair<int, int>> order = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}};
  for (std::size_t z = 0; z < order.size(); ++z) {
    EXPECT_EQ(pair(order[z].first, order[z].second), Nat(z));
    auto [a, b] = unpair(Nat(z));
    EXPECT_EQ(a, Nat(order[z].first));
    EXPECT_EQ(b, Nat(order[z].second));
  }
}

TEST(Pairing, IsABijectionOnAPrefix) {
  for (std::uint64_t z = 0; z < 20000; ++z) {
    auto [a, b] = unpair(Nat(z));
    ASSERT_EQ(pair(a, b), Nat(z));
  }
}

TEST(Pairing, RoundTripsLargeValues) {
  auto& rng = testsupport::rng_for(11);
  for (int i = 0; i < 500; ++i) {
    const Nat a = testsupport::random_nat(rng, 200), b = testsupport::random_nat(rng, 200);
    auto [a2, b2] = unpair(pair(a, b));
    EXPECT_EQ(a2, a);
    EXPECT_EQ(b2, b);
  }
}

TEST(Pairing, TuplesAndListsRoundTrip) {
  auto& rng = testsupport::rng_for(12);
  for (int i = 0; i < 500; ++i) {
    std::vector<Nat> items(testsupport::uniform(rng, 1, 6));
    for (auto& v : items) v = testsupport::random_nat(rng, 40);
    EXPECT_EQ(decode_tuple(encode_tuple(items), items.size()), items);
    EXPECT_EQ(decode_list(encode_list(items)), items);
  }
}

TEST(Pairing, EveryCodeIsAList) {
  for (std::uint64_t z = 0; z < 5000; ++z) {
    const auto items = decode_list(Nat(z));
    ASSERT_FALSE(items.empty());
    ASSERT_EQ(encode_list(items), Nat(z));
  }
}

TEST(Pairing, EmptyInputsAreRejected) {
  EXPECT_THROW(encode_tuple({}), std::invalid_argument);
  EXPECT_THROW(encode_list({}), std::invalid_argument);
  EXPECT_THROW(decode_tuple(Nat(3), 0), std::invalid_argument);
}
