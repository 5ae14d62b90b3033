#include <gtest/gtest.h>

#include <stdexcept>

#include "evmarket/errors.hpp"
#include "evmarket/user_response.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

UserOffer countered_offer() {
  return UserOffer{1, true, 0, {{0, true, 3.0, 0.0, 5.5}, {1, false, 3.75, 3.75, 5.5}}};
}

TEST(MarkupPayment, SumsPriceOverBidTimesEnergy) {
  const auto inst = testing::tiny_a(0.0, 3.0);
  EXPECT_NEAR(markup_payment(countered_offer(), inst.bids[0]), 0.75 * 5.5, 1e-12);
}

TEST(MarkupPayment, NegativeWhenCappedBelowBid) {
  const auto inst = testing::tiny_a(0.0, 4.0);
  const UserOffer offer{1, true, 0, {{0, false, 3.75, 3.75, 5.5}}};
  EXPECT_NEAR(markup_payment(offer, inst.bids[0]), -0.25 * 5.5, 1e-12);
}

TEST(Utility, RateBenefitMinusMarkupDisutility) {
  const auto inst = testing::tiny_a(0.0, 3.0);
  const UserPreference pref{0.5, 2.0, 0.0};
  EXPECT_NEAR(utility(countered_offer(), inst.bids[0], pref, inst.station), 0.5 * 22.0 - 2.0 * 0.75 * 5.5, 1e-12);
}

TEST(Utility, RequiresAcceptedOfferWithRate) {
  const auto inst = testing::tiny_a();
  const UserOffer rejected{1, false, std::nullopt, {}};
  EXPECT_THROW(utility(rejected, inst.bids[0], UserPreference{}, inst.station), std::invalid_argument);
}

TEST(Decide, OneDecisionPerOperatorAcceptedUser) {
  auto inst = testing::two_by_four();
  OperatorOffer offer;
  offer.num_rates = 1;
  offer.users.push_back(countered_offer());
  offer.users.push_back(UserOffer{2, false, std::nullopt, {}});
  const std::vector<UserPreference> prefs = {{0.5, 2.0, 0.0}, {1.0, 1.0, 0.0}};
  const auto decisions = decide(offer, inst, prefs);
  ASSERT_EQ(decisions.size(), 1u);
  EXPECT_EQ(decisions[0].user_id, 1);
  EXPECT_NEAR(decisions[0].utility, 11.0 - 8.25, 1e-12);
  EXPECT_TRUE(decisions[0].accepted);
}

TEST(Decide, OutsideOptionCanTurnUserAway) {
  const auto inst = testing::two_by_four();
  OperatorOffer offer;
  offer.num_rates = 1;
  offer.users = {countered_offer(), UserOffer{2, false, std::nullopt, {}}};
  const std::vector<UserPreference> prefs = {{0.5, 2.0, 5.0}, {}};
  const auto decisions = decide(offer, inst, prefs);
  ASSERT_EQ(decisions.size(), 1u);
  EXPECT_FALSE(decisions[0].accepted);
}

TEST(Decide, MissingPreferenceThrows) {
  const auto inst = testing::two_by_four();
  OperatorOffer offer;
  offer.num_rates = 1;
  offer.users = {UserOffer{1, false, std::nullopt, {}}, UserOffer{2, true, 0, {{0, true, 3.5, 0.0, 5.5}}}};
  const std::vector<UserPreference> prefs(1);
  EXPECT_THROW(decide(offer, inst, prefs), MissingPreference);
}

TEST(SamplePreferences, DeterministicAndInRange) {
  const auto a = sample_preferences(20, 42);
  const auto b = sample_preferences(20, 42);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample_preferences(20, 43));
  for (const auto& p : a) {
    EXPECT_GE(p.theta_rate, 0.5);
    EXPECT_LE(p.theta_rate, 2.0);
    EXPECT_GE(p.theta_markup, 0.5);
    EXPECT_LE(p.theta_markup, 2.0);
    EXPECT_EQ(p.outside_option, 0.0);
  }
}

TEST(SamplePreferences, PrefixStableAcrossCounts) {
  const auto small = sample_preferences(5, 9);
  const auto large = sample_preferences(12, 9);
  for (std::size_t k = 0; k < small.size(); ++k) EXPECT_EQ(small[k], large[k]);
}

}  // namespace
}  // namespace evmarket
