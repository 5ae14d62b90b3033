#include <gtest/gtest.h>

#include "evmarket/oracle.hpp"
#include "evmarket/offer.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

// Two users on one 22 kW charger, both served in two-slot windows: user 1 at
// its bid in slots 0-1, user 2 countered in slots 2-3.
struct Fixture {
  ProblemInstance inst = testing::two_by_four(0.5);
  OperatorOffer offer;

  Fixture() {
    inst.bids[0].q_max = 11.0;
    inst.bids[1].q_max = 11.0;
    offer.num_rates = 1;
    offer.reference_prices = {3.0, 3.0, 0.0, 0.0};
    offer.users.push_back(UserOffer{1, true, 0, {{0, true, 3.0, 0.0, 5.5}, {1, true, 3.0, 0.0, 5.5}}});
    offer.users.push_back(UserOffer{2, true, 0, {{2, false, 3.75, 3.75, 5.5}, {3, false, 3.75, 3.75, 5.5}}});
    offer.objective = offer_profit(offer, inst);
  }
};

TEST(VerifyOffer, HandBuiltOfferIsClean) {
  Fixture f;
  const auto report = verify_offer(f.offer, f.inst);
  EXPECT_TRUE(report.clean()) << report.summary();
  EXPECT_NEAR(f.offer.objective, 5.5 * (1.5 + 1.5 + 2.25 + 2.25), 1e-12);
}

TEST(VerifyOffer, OracleOffersAreClean) {
  for (double gamma : {0.0, 0.5, 1.0}) {
    const auto inst = testing::two_by_four(gamma);
    const auto offer = exhaustive_oracle(inst);
    EXPECT_TRUE(verify_offer(offer, inst).clean()) << "gamma " << gamma;
    EXPECT_NEAR(offer_profit(offer, inst), offer.objective, 1e-9);
  }
}

TEST(VerifyOffer, PriceAboveCap) {
  Fixture f;
  f.offer.users[1].slots[0].final_price = f.offer.users[1].slots[0].counter_price = 3.9;
  const auto report = verify_offer(f.offer, f.inst);
  EXPECT_TRUE(report.has_tag("eq15"));
}

TEST(VerifyOffer, PriceBelowMargin) {
  Fixture f;
  f.inst.bids[0].bid_price = 2.0;
  f.offer.users[0].slots[0].final_price = f.offer.users[0].slots[1].final_price = 2.0;
  f.offer.reference_prices = {2.0, 2.0, 0.0, 0.0};
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq14"));
}

TEST(VerifyOffer, AtBidSlotAwayFromBid) {
  Fixture f;
  f.offer.users[0].slots[1].final_price = 3.2;
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq13"));
}

TEST(VerifyOffer, CounterAboveMarkupCap) {
  Fixture f;
  f.inst.station.rates[0].max_markup = 0.1;
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq12b"));
}

TEST(VerifyOffer, CounterBelowReferencePrice) {
  Fixture f;
  // User 2 moves onto user 1's slots on a second charger, below user 1's bid.
  f.inst.station.rates[0].charger_count = 2;
  f.inst.station.slot_capacity.assign(4, 11.0);
  f.inst.bids[0].bid_price = 3.7;
  for (auto& s : f.offer.users[0].slots) s.final_price = 3.7;
  f.offer.reference_prices = {3.7, 3.7, 0.0, 0.0};
  f.offer.users[1].slots = {{0, false, 3.6, 3.6, 5.5}, {1, false, 3.6, 3.6, 5.5}};
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq17"));
}

TEST(VerifyOffer, ShareBelowGamma) {
  Fixture f;
  f.inst.policy.gamma = 0.8;
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq18"));
}

TEST(VerifyOffer, SplitWindow) {
  Fixture f;
  f.inst.bids[1].q_max = 22.0;
  f.offer.users[1].slots = {{2, false, 3.75, 3.75, 5.5}};
  f.offer.users[0].slots = {{0, true, 3.0, 0.0, 5.5}, {3, true, 3.0, 0.0, 5.5}};
  f.offer.reference_prices = {3.0, 0.0, 0.0, 3.0};
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq4"));
}

TEST(VerifyOffer, EnergyOutsideDemand) {
  Fixture f;
  f.inst.bids[0].q_min = 12.0;
  f.inst.bids[0].q_max = 20.0;
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq7"));
}

TEST(VerifyOffer, ChargerAndCapacityLimits) {
  Fixture f;
  f.offer.users[1].slots = {{1, false, 3.75, 3.75, 5.5}, {2, false, 3.75, 3.75, 5.5}};
  const auto report = verify_offer(f.offer, f.inst);
  EXPECT_TRUE(report.has_tag("eq9"));
  EXPECT_TRUE(report.has_tag("eq8"));
}

TEST(VerifyOffer, SlotOutsideAcceptableWindow) {
  Fixture f;
  f.inst.bids[1].acceptable_slots = {0, 1, 2};
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq3"));
}

TEST(VerifyOffer, RejectedUserHoldingSlots) {
  Fixture f;
  f.offer.users[1].accepted = false;
  const auto report = verify_offer(f.offer, f.inst);
  EXPECT_FALSE(report.clean());
  EXPECT_NE(report.summary().find("eq"), std::string::npos);
}

TEST(VerifyOffer, WrongEnergyPerSlot) {
  Fixture f;
  f.offer.users[0].slots[0].energy_kwh = 5.0;
  EXPECT_TRUE(verify_offer(f.offer, f.inst).has_tag("eq10"));
}

TEST(UserOffer, Counts) {
  Fixture f;
  EXPECT_EQ(f.offer.users[0].at_bid_slots(), 2);
  EXPECT_EQ(f.offer.users[0].countered_slots(), 0);
  EXPECT_EQ(f.offer.users[1].countered_slots(), 2);
  EXPECT_NEAR(f.offer.users[1].total_energy(), 11.0, 1e-12);
}

}  // namespace
}  // namespace evmarket
