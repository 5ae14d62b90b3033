#include <gtest/gtest.h>

#include "evmarket/domain.hpp"
#include "evmarket/errors.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

bool has_message(const ValidationResult& r, std::string_view text, std::optional<int> user = std::nullopt) {
  for (const auto& v : r.violations) {
    if (v.message.find(text) != std::string::npos && (!user || v.user_id == user)) return true;
  }
  return false;
}

TEST(EnergyPerSlot, MatchesRateTimesDuration) {
  EXPECT_DOUBLE_EQ(energy_per_slot(make_rate(22.0, 1.5, 2.0, 1, 1), 15.0), 5.5);
  EXPECT_DOUBLE_EQ(energy_per_slot(make_rate(50.0, 2.0, 2.0, 1, 1), 15.0), 12.5);
  EXPECT_DOUBLE_EQ(energy_per_slot(make_rate(100.0, 2.5, 2.0, 1, 1), 60.0), 100.0);
}

TEST(EnergyPerSlot, LinearInRateAndDuration) {
  for (double kw : {7.0, 22.0, 43.0}) {
    for (double minutes : {5.0, 15.0, 30.0}) {
      const double base = energy_per_slot(make_rate(kw, 1.0, 0.0, 1, 1), minutes);
      EXPECT_DOUBLE_EQ(energy_per_slot(make_rate(2 * kw, 1.0, 0.0, 1, 1), minutes), 2 * base);
      EXPECT_DOUBLE_EQ(energy_per_slot(make_rate(kw, 1.0, 0.0, 1, 1), 2 * minutes), 2 * base);
    }
  }
}

TEST(StationConfig, EnergyPerSlotUsesSlotLength) {
  StationConfig station;
  station.num_slots = 1;
  station.slot_minutes = 30.0;
  station.rates = {make_rate(50.0, 2.0, 2.0, 1, 1)};
  EXPECT_DOUBLE_EQ(station.energy_per_slot(0), 25.0);
}

TEST(MakeRate, BroadcastsConstantCost) {
  const auto rate = make_rate(22.0, 1.5, 2.0, 3, 4);
  ASSERT_EQ(rate.cost_per_kwh.size(), 4u);
  for (double c : rate.cost_per_kwh) EXPECT_EQ(c, 1.5);
  EXPECT_EQ(rate.charger_count, 3);
  EXPECT_EQ(rate.max_cost(), 1.5);
}

TEST(UserBid, AcceptsDeclaredSlotsOnly) {
  const UserBid bid{1, 3.0, 0.0, 10.0, {1, 2, 5}};
  EXPECT_TRUE(bid.accepts(2));
  EXPECT_FALSE(bid.accepts(3));
  EXPECT_FALSE(bid.accepts(-1));
}

TEST(BigM, DefaultCoversBidsAndCap) {
  const auto inst = testing::two_by_four();
  // max(alpha * c, bid + delta) = max(3.75, 5.5) = 5.5
  EXPECT_DOUBLE_EQ(minimum_price_big_m(inst.bids, inst.station, 2.5), 5.5);
  EXPECT_DOUBLE_EQ(default_price_big_m(inst.bids, inst.station, 2.5), 6.5);
}

TEST(ValidateInstance, WellFormedTwoUserInstanceIsOk) {
  const auto result = validate_instance(testing::two_by_four());
  EXPECT_TRUE(result.ok()) << result.summary();
}

TEST(ValidateInstance, QminAboveQmaxNamesUser) {
  auto inst = testing::two_by_four();
  inst.bids[1].q_min = 10.0;
  inst.bids[1].q_max = 5.0;
  const auto result = validate_instance(inst);
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_message(result, "q_min > q_max", 2));
  EXPECT_NE(result.summary().find("for user 2"), std::string::npos);
}

TEST(ValidateInstance, SlotAtHorizonIsOutOfRange) {
  auto inst = testing::two_by_four();
  inst.bids[0].acceptable_slots = {2, 3, 4};
  const auto result = validate_instance(inst);
  EXPECT_TRUE(has_message(result, "slot out of horizon", 1));
}

TEST(ValidateInstance, ReportsEveryProblemWithoutThrowing) {
  auto inst = testing::two_by_four();
  inst.bids[1].user_id = 1;
  inst.bids[0].bid_price = 0.0;
  inst.policy.gamma = 1.5;
  inst.policy.alpha = 1.2;
  inst.station.rates[0].cost_per_kwh[2] = 0.0;
  inst.station.slot_capacity.pop_back();
  const auto result = validate_instance(inst);
  EXPECT_TRUE(has_message(result, "duplicate user id"));
  EXPECT_TRUE(has_message(result, "bid price must be positive", 1));
  EXPECT_TRUE(has_message(result, "gamma"));
  EXPECT_TRUE(has_message(result, "alpha"));
  EXPECT_TRUE(has_message(result, "costs must be positive"));
  EXPECT_TRUE(has_message(result, "capacity entry per slot"));
}

TEST(ValidateInstance, BigMBelowMinimumIsRejected) {
  auto inst = testing::two_by_four();
  inst.policy.price_big_m = 5.0;
  EXPECT_TRUE(has_message(validate_instance(inst), "big-M"));
}

TEST(ValidateInstance, UnsortedSlotsAreRejected) {
  auto inst = testing::two_by_four();
  inst.bids[0].acceptable_slots = {2, 1};
  EXPECT_TRUE(has_message(validate_instance(inst), "sorted", 1));
}

TEST(RequireValid, ThrowsInvalidInstance) {
  auto inst = testing::two_by_four();
  inst.station.rates.clear();
  EXPECT_THROW(require_valid(inst), InvalidInstance);
  EXPECT_NO_THROW(require_valid(testing::two_by_four()));
}

}  // namespace
}  // namespace evmarket
