#include <gtest/gtest.h>

#include <random>

#include "evmarket/metrics.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

TEST(Gini, KnownValues) {
  const std::vector<double> v = {1.0, 2.0, 3.0};
  EXPECT_NEAR(*gini(v), 2.0 / 9.0, 1e-12);
  const std::vector<double> equal(5, 3.75);
  EXPECT_NEAR(*gini(equal), 0.0, 1e-15);
  const std::vector<double> one_holder = {0.0, 0.0, 0.0, 4.0};
  EXPECT_NEAR(*gini(one_holder), 0.75, 1e-12);
}

TEST(Gini, EmptyAndZero) {
  EXPECT_FALSE(gini(std::vector<double>{}).has_value());
  EXPECT_EQ(*gini(std::vector<double>{0.0, 0.0}), 0.0);
}

TEST(Gini, MatchesPairwiseDefinition) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> price(0.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> v(static_cast<std::size_t>(1 + k % 30));
    for (auto& x : v) x = price(gen);
    EXPECT_NEAR(*gini(v), testing::pairwise_gini(v), 1e-12);
  }
}

TEST(Aggregate, MatchesTwoPass) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> noise(500.0, 120.0);
  std::vector<SeedMetrics> runs;
  std::vector<double> profits;
  for (std::uint64_t s = 1; s <= 50; ++s) {
    SeedMetrics r;
    r.seed = s;
    r.metrics.operator_profit = noise(gen);
    profits.push_back(r.metrics.operator_profit);
    runs.push_back(r);
  }
  const auto agg = aggregate(runs);
  const auto direct = testing::two_pass(profits);
  ASSERT_TRUE(agg.profit.has_value());
  EXPECT_NEAR(agg.profit->mean, direct.mean, 1e-9);
  EXPECT_NEAR(agg.profit->std, direct.std, 1e-9);
  EXPECT_EQ(agg.profit->count, 50);
  EXPECT_EQ(agg.seed_count, 50);
}

TEST(Aggregate, SkipsAbsentValuesPerIndicator) {
  std::vector<SeedMetrics> runs(3);
  runs[0].seed = 1;
  runs[0].metrics.mean_final_price = 3.0;
  runs[1].seed = 2;
  runs[2].seed = 3;
  runs[2].metrics.mean_final_price = 4.0;
  const auto agg = aggregate(runs);
  EXPECT_EQ(agg.profit->count, 3);
  EXPECT_EQ(agg.final_price->count, 2);
  EXPECT_NEAR(agg.final_price->mean, 3.5, 1e-12);
  EXPECT_NEAR(agg.final_price->std, 0.5, 1e-12);
  EXPECT_FALSE(agg.post_response_acceptance.has_value());
}

TEST(Aggregate, IndependentOfInputOrder) {
  std::vector<SeedMetrics> runs;
  for (std::uint64_t s = 1; s <= 7; ++s) {
    SeedMetrics r;
    r.seed = s;
    r.metrics.operator_profit = 1.0 / static_cast<double>(s);
    runs.push_back(r);
  }
  auto reversed = runs;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_EQ(aggregate(runs).profit->mean, aggregate(reversed).profit->mean);
}

struct OfferFixture {
  ProblemInstance inst = testing::two_by_four();
  OperatorOffer offer;
  OfferFixture() {
    offer.num_rates = 1;
    offer.users.push_back(UserOffer{1, true, 0, {{0, true, 3.0, 0.0, 5.5}, {1, false, 3.75, 3.75, 5.5}}});
    offer.users.push_back(UserOffer{2, true, 0, {{2, true, 3.5, 0.0, 5.5}}});
  }
};

TEST(ComputeMetrics, SlotAveraging) {
  OfferFixture f;
  const auto m = compute_metrics(f.offer, f.inst);
  EXPECT_EQ(m.user_count, 2);
  EXPECT_EQ(m.accepted_users, 2);
  EXPECT_EQ(m.acceptance_rate, 1.0);
  EXPECT_NEAR(m.operator_profit, 5.5 * (1.5 + 2.25 + 2.0), 1e-12);
  EXPECT_NEAR(*m.mean_final_price, (3.0 + 3.75 + 3.5) / 3.0, 1e-12);
  EXPECT_NEAR(*m.mean_markup, 0.75 / 3.0, 1e-12);
  EXPECT_FALSE(m.post_response_acceptance.has_value());
}

TEST(ComputeMetrics, UserAveraging) {
  OfferFixture f;
  const auto m = compute_metrics(f.offer, f.inst, std::nullopt, PriceAveraging::Users);
  EXPECT_NEAR(*m.mean_final_price, (3.375 + 3.5) / 2.0, 1e-12);
  EXPECT_NEAR(*m.mean_markup, 0.375 / 2.0, 1e-12);
}

TEST(ComputeMetrics, PostResponseShare) {
  OfferFixture f;
  const std::vector<AcceptanceDecision> decisions = {{1, -1.0, false}, {2, 4.0, true}};
  const auto m = compute_metrics(f.offer, f.inst, decisions);
  EXPECT_NEAR(*m.post_response_acceptance, 0.5, 1e-12);
}

TEST(ComputeMetrics, NobodyAccepted) {
  OfferFixture f;
  for (auto& u : f.offer.users) {
    u.accepted = false;
    u.rate_index.reset();
    u.slots.clear();
  }
  const std::vector<AcceptanceDecision> none;
  const auto m = compute_metrics(f.offer, f.inst, none);
  EXPECT_EQ(m.acceptance_rate, 0.0);
  EXPECT_EQ(m.operator_profit, 0.0);
  EXPECT_FALSE(m.mean_final_price.has_value());
  EXPECT_FALSE(m.gini.has_value());
  EXPECT_FALSE(m.post_response_acceptance.has_value());
}

}  // namespace
}  // namespace evmarket
