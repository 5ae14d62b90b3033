#include <gtest/gtest.h>

#include "evmarket/errors.hpp"
#include "evmarket/scenario.hpp"

namespace evmarket {
namespace {

ScenarioSpec small_spec(double gamma = 0.4) {
  ScenarioSpec spec;
  spec.name = "small";
  spec.user_count = 4;
  spec.demand = {10.0, 30.0};
  const std::vector<double> rates = {22.0, 50.0};
  spec.station = standard_station(8, rates);
  spec.policy.gamma = gamma;
  spec.seed = 5;
  return spec;
}

TEST(Catalog, StandardRates) {
  const auto rate = standard_rate(50.0, 4, 2);
  EXPECT_EQ(rate.cost_per_kwh, std::vector<double>(4, 2.0));
  EXPECT_EQ(rate.max_markup, 2.0);
  EXPECT_EQ(rate.charger_count, 2);
  EXPECT_EQ(standard_rate(100.0, 1).cost(0), 2.5);
  EXPECT_THROW(standard_rate(11.0, 4), ConfigError);
}

TEST(NarrowWindow, CentredInHorizon) {
  EXPECT_EQ(narrow_window(48, 8), (std::vector<int>{20, 21, 22, 23, 24, 25, 26, 27}));
  EXPECT_EQ(narrow_window(3, 8), (std::vector<int>{0, 1, 2}));
}

TEST(GenerateInstance, DeterministicPerSeed) {
  const auto spec = small_spec();
  EXPECT_EQ(generate_instance(spec), generate_instance(spec));
  auto other = spec;
  other.seed = 6;
  EXPECT_NE(generate_instance(spec).bids, generate_instance(other).bids);
}

TEST(GenerateInstance, BidsWithinRangeAndCapacityAutomatic) {
  const auto inst = generate_instance(small_spec());
  ASSERT_EQ(inst.num_users(), 4);
  for (const auto& bid : inst.bids) {
    EXPECT_GE(bid.bid_price, 2.0);
    EXPECT_LE(bid.bid_price, 4.0);
    EXPECT_EQ(bid.q_min, 10.0);
    EXPECT_EQ(bid.q_max, 30.0);
    EXPECT_EQ(bid.acceptable_slots.size(), 8u);
  }
  EXPECT_EQ(inst.station.slot_capacity, std::vector<double>(8, 5.5 + 12.5));
  EXPECT_TRUE(validate_instance(inst).ok());
}

TEST(GenerateInstance, SplitAvailabilityNarrowsLastUsers) {
  auto spec = small_spec();
  spec.availability = {Availability::Pattern::Split, 2, 4};
  const auto inst = generate_instance(spec);
  EXPECT_EQ(inst.bids[1].acceptable_slots.size(), 8u);
  EXPECT_EQ(inst.bids[2].acceptable_slots, (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(inst.bids[3].acceptable_slots, (std::vector<int>{2, 3, 4, 5}));
}

TEST(ValidateSpec, RejectsBadValues) {
  auto spec = small_spec();
  spec.policy.gamma = 1.5;
  EXPECT_THROW(validate_spec(spec), ConfigError);
  spec = small_spec();
  spec.bid_range = {4.0, 2.0};
  EXPECT_THROW(validate_spec(spec), ConfigError);
  spec = small_spec();
  spec.availability = {Availability::Pattern::Split, 9, 4};
  EXPECT_THROW(validate_spec(spec), ConfigError);
  spec = small_spec();
  spec.policy.alpha = 1.2;
  EXPECT_THROW(validate_spec(spec), ConfigError);
}

TEST(Presets, KnownNamesResolve) {
  const auto names = preset_names();
  for (const char* expected : {"baseline-single-rate", "table2", "multi-rate", "expanded-bid-range",
                               "bid-range-series", "heterogeneous-availability", "mixed-22-50", "large-scale",
                               "utility-response"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
  }
  for (const auto& name : names) {
    const auto p = find_preset(name);
    EXPECT_NO_THROW(validate_sweep(p.sweep)) << name;
    EXPECT_EQ(p.sweep.base, p.scenario) << name;
  }
  EXPECT_THROW(find_preset("nope"), ConfigError);
}

TEST(Presets, FrozenParameters) {
  const auto mixed = find_preset("mixed-22-50");
  ASSERT_EQ(mixed.scenario.station.rates.size(), 2u);
  EXPECT_EQ(mixed.scenario.station.rates[0].charger_count, 1);
  EXPECT_EQ(mixed.scenario.station.rates[1].charger_count, 1);
  EXPECT_EQ(mixed.scenario.seed, 1u);
  EXPECT_EQ(mixed.scenario.demand, (DemandBounds{20.0, 40.0}));
  const auto large = find_preset("large-scale");
  EXPECT_EQ(large.scenario.user_count, 40);
  EXPECT_EQ(large.scenario.demand, (DemandBounds{20.0, 60.0}));
  EXPECT_EQ(large.scenario.policy.gamma, 0.8);
}

TEST(RunScenario, BothFormulationsAgree) {
  for (double gamma : {0.2, 0.8}) {
    const auto inst = generate_instance(small_spec(gamma));
    const auto prefs = sample_preferences(inst.num_users(), 5);
    RunOptions slots;
    slots.use_count_model = false;
    const auto a = run_scenario(inst, prefs, RunOptions{});
    const auto b = run_scenario(inst, prefs, slots);
    EXPECT_EQ(a.formulation, Formulation::Counts);
    EXPECT_EQ(b.formulation, Formulation::Slots);
    EXPECT_NEAR(a.metrics.operator_profit, b.metrics.operator_profit, 1e-6);
    EXPECT_EQ(a.decisions.size(), static_cast<std::size_t>(a.metrics.accepted_users));
  }
}

TEST(RunScenario, SplitAvailabilityUsesSlotModel) {
  auto spec = small_spec();
  spec.availability = {Availability::Pattern::Split, 2, 4};
  const auto inst = generate_instance(spec);
  const auto result = run_scenario(inst, sample_preferences(4, 1), RunOptions{});
  EXPECT_EQ(result.formulation, Formulation::Slots);
}

TEST(RunSweep, CellsInNestingOrderWithSeedCount) {
  SweepSpec sweep;
  sweep.base = small_spec();
  sweep.base.user_count = 3;
  sweep.gammas = {0.2, 0.8};
  sweep.rate_configs = {{standard_rate(22.0, 8)}, {standard_rate(50.0, 8)}};
  sweep.bid_ranges = {{2.0, 4.0}};
  sweep.seeds = 3;
  const auto cells = run_sweep(sweep, RunOptions{});
  ASSERT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[0].rate_label(), "22");
  EXPECT_EQ(cells[1].gamma, 0.8);
  EXPECT_EQ(cells[2].rate_label(), "50");
  for (const auto& cell : cells) {
    EXPECT_EQ(cell.metrics.seed_count, 3);
    EXPECT_EQ(cell.runs.size(), 3u);
    EXPECT_EQ(cell.failed + cell.infeasible + cell.limit_reached, 0);
  }
}

TEST(RunSweep, WorkerCountDoesNotChangeResults) {
  SweepSpec sweep;
  sweep.base = small_spec();
  sweep.gammas = {0.4};
  sweep.rate_configs = {sweep.base.station.rates};
  sweep.bid_ranges = {{1.0, 6.0}};
  sweep.seeds = 4;
  RunOptions parallel;
  parallel.workers = 3;
  const auto a = run_sweep(sweep, RunOptions{});
  const auto b = run_sweep(sweep, parallel);
  EXPECT_EQ(a[0].metrics.profit->mean, b[0].metrics.profit->mean);
  EXPECT_EQ(a[0].metrics.acceptance->mean, b[0].metrics.acceptance->mean);
}

}  // namespace
}  // namespace evmarket
