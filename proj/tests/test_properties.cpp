// Randomised properties of the solved operator problem on small instances.

#include <gtest/gtest.h>

#include "evmarket/model.hpp"
#include "evmarket/oracle.hpp"
#include "evmarket/scenario.hpp"
#include "evmarket/solver.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

OperatorOffer solve_offer(const ProblemInstance& inst) {
  const auto model = build_model(inst);
  const auto sol = make_backend("highs")->solve(model, SolverOptions{});
  EXPECT_EQ(sol.status, SolveStatus::Optimal);
  return extract_offer(model, sol, inst);
}

TEST(Properties, ProfitNonIncreasingInGamma) {
  std::mt19937_64 gen(31);
  for (int k = 0; k < 25; ++k) {
    auto inst = testing::random_tiny(gen, 0.0);
    double previous = 1e300;
    for (double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      inst.policy.gamma = gamma;
      const double profit = solve_offer(inst).objective;
      EXPECT_LE(profit, previous + 1e-6) << "case " << k << " gamma " << gamma;
      previous = profit;
    }
  }
}

TEST(Properties, ProfitNonDecreasingInAlpha) {
  std::mt19937_64 gen(32);
  for (int k = 0; k < 25; ++k) {
    auto inst = testing::random_tiny(gen, 0.5);
    double previous = -1.0;
    for (double alpha : {2.0, 2.5, 3.0}) {
      inst.policy.alpha = alpha;
      inst.policy.price_big_m = default_price_big_m(inst.bids, inst.station, alpha);
      const double profit = solve_offer(inst).objective;
      EXPECT_GE(profit, previous - 1e-6) << "case " << k << " alpha " << alpha;
      previous = profit;
    }
  }
}

TEST(Properties, SolvedOffersVerifyAndPriceTheObjective) {
  std::mt19937_64 gen(33);
  for (int k = 0; k < 40; ++k) {
    const auto inst = testing::random_tiny(gen, k % 3 * 0.5);
    const auto offer = solve_offer(inst);
    const auto report = verify_offer(offer, inst);
    EXPECT_TRUE(report.clean()) << report.summary();
    EXPECT_NEAR(offer_profit(offer, inst), offer.objective, 1e-6);
  }
}

TEST(Properties, SolverMatchesOracle) {
  std::mt19937_64 gen(34);
  for (int k = 0; k < 40; ++k) {
    const auto inst = testing::random_tiny(gen, k % 3 * 0.5);
    EXPECT_NEAR(solve_offer(inst).objective, exhaustive_oracle(inst).objective, 1e-6) << "case " << k;
  }
}

TEST(Properties, UserOrderDoesNotChangeProfit) {
  std::mt19937_64 gen(35);
  for (int k = 0; k < 20; ++k) {
    auto inst = testing::random_tiny(gen, 0.5);
    if (inst.num_users() < 2) continue;
    auto swapped = inst;
    std::swap(swapped.bids[0], swapped.bids[1]);
    swapped.bids[0].user_id = 1;
    swapped.bids[1].user_id = 2;
    EXPECT_NEAR(solve_offer(inst).objective, solve_offer(swapped).objective, 1e-6) << "case " << k;
  }
}

TEST(Properties, BidsOverCapAreNeverServedAtBid) {
  std::mt19937_64 gen(36);
  for (int k = 0; k < 40; ++k) {
    const auto inst = testing::random_tiny(gen, k % 3 * 0.5);
    const auto offer = solve_offer(inst);
    for (std::size_t i = 0; i < offer.users.size(); ++i) {
      const auto& user = offer.users[i];
      if (!user.accepted) continue;
      const auto& rate = inst.station.rates[static_cast<std::size_t>(*user.rate_index)];
      for (const auto& s : user.slots) {
        const double cap = inst.policy.alpha * rate.cost(s.slot);
        EXPECT_LE(s.final_price, cap + 1e-6);
        if (inst.bids[i].bid_price > cap + 1e-9) EXPECT_FALSE(s.at_bid);
      }
    }
  }
}

}  // namespace
}  // namespace evmarket
