#include <gtest/gtest.h>

#include <random>

#include "evmarket/count_model.hpp"
#include "evmarket/model.hpp"
#include "evmarket/oracle.hpp"
#include "evmarket/scenario.hpp"
#include "evmarket/solver.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

// Several users sharing one run of slots on single-charger rates with flat
// costs, so both formulations apply.
ProblemInstance shared_run(std::mt19937_64& gen, double gamma, int users, int slots) {
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
  auto cents = [](double v) { return std::round(v * 100.0) / 100.0; };
  ProblemInstance inst;
  inst.station.num_slots = slots;
  inst.station.rates = {make_rate(22.0, 1.5, 2.0, 1, slots), make_rate(50.0, 2.0, 2.0, 1, slots),
                        make_rate(100.0, 2.5, 2.0, 1, slots)};
  inst.station.slot_capacity.assign(static_cast<std::size_t>(slots), 5.5 + 12.5 + 25.0);
  const int first = std::uniform_int_distribution<int>(0, 1)(gen);
  std::vector<int> run;
  for (int t = first; t < slots; ++t) run.push_back(t);
  for (int i = 0; i < users; ++i) {
    const double q_min = cents(uniform(5.0, 30.0));
    inst.bids.push_back(UserBid{i + 1, cents(uniform(2.0, 5.0)), q_min, q_min + cents(uniform(0.0, 30.0)), run});
  }
  inst.policy.gamma = gamma;
  inst.policy.price_big_m = default_price_big_m(inst.bids, inst.station, inst.policy.alpha);
  return inst;
}

double slot_route(const ProblemInstance& inst) {
  RunOptions options;
  options.use_count_model = false;
  const std::vector<UserPreference> prefs(static_cast<std::size_t>(inst.num_users()));
  const auto result = run_scenario(inst, prefs, options);
  EXPECT_EQ(result.formulation, Formulation::Slots);
  return result.offer.objective;
}

double count_route(const ProblemInstance& inst) {
  const std::vector<UserPreference> prefs(static_cast<std::size_t>(inst.num_users()));
  const auto result = run_scenario(inst, prefs, RunOptions{});
  EXPECT_EQ(result.formulation, Formulation::Counts);
  return result.offer.objective;
}

TEST(CountModel, MatchesSlotModelOnSharedRuns) {
  std::mt19937_64 gen(2024);
  for (double gamma : {0.0, 0.4, 0.8, 1.0}) {
    for (int k = 0; k < 6; ++k) {
      const auto inst = shared_run(gen, gamma, 4, 6);
      EXPECT_NEAR(count_route(inst), slot_route(inst), 1e-6) << "gamma " << gamma << " case " << k;
    }
  }
}

TEST(CountModel, MatchesOracleOnTinySharedRuns) {
  std::mt19937_64 gen(7);
  for (int k = 0; k < 30; ++k) {
    const double gamma = k % 3 * 0.5;
    auto inst = shared_run(gen, gamma, 2, 4);
    inst.station.rates.pop_back();
    inst.station.slot_capacity.assign(4, 5.5 + 12.5);
    inst.policy.price_big_m = default_price_big_m(inst.bids, inst.station, inst.policy.alpha);
    ASSERT_TRUE(build_count_model(inst).has_value());
    EXPECT_NEAR(count_route(inst), exhaustive_oracle(inst).objective, 1e-6) << "case " << k;
  }
}

TEST(CountModel, ExpansionSatisfiesFullModel) {
  std::mt19937_64 gen(99);
  const auto inst = shared_run(gen, 0.6, 5, 8);
  const auto counts = build_count_model(inst);
  ASSERT_TRUE(counts.has_value());
  const auto sol = make_backend("highs")->solve(counts->model, SolverOptions{});
  ASSERT_EQ(sol.status, SolveStatus::Optimal);
  const auto full = build_model(inst);
  const auto values = expand_count_solution(*counts, sol.values, inst, full);
  EXPECT_LE(max_violation(full, values), 1e-6);
  EXPECT_NEAR(objective_value(full, values), sol.objective, 1e-6);
}

TEST(CountModel, DeclinesOtherStructures) {
  std::mt19937_64 gen(3);
  const auto base = shared_run(gen, 0.5, 3, 6);
  ASSERT_TRUE(build_count_model(base).has_value());

  auto split = base;
  split.bids[1].acceptable_slots = {2, 3};
  EXPECT_FALSE(build_count_model(split).has_value());

  auto gap = base;
  for (auto& bid : gap.bids) bid.acceptable_slots = {1, 2, 4, 5};
  EXPECT_FALSE(build_count_model(gap).has_value());

  auto two_chargers = base;
  two_chargers.station.rates[0].charger_count = 2;
  EXPECT_FALSE(build_count_model(two_chargers).has_value());

  auto varying = base;
  varying.station.rates[1].cost_per_kwh[3] = 1.8;
  EXPECT_FALSE(build_count_model(varying).has_value());

  auto tight = base;
  tight.station.slot_capacity[4] = 20.0;
  EXPECT_FALSE(build_count_model(tight).has_value());
}

TEST(CountModel, NoSchedulableUsers) {
  auto inst = testing::tiny_a();
  inst.bids[0].acceptable_slots.clear();
  const auto counts = build_count_model(inst);
  ASSERT_TRUE(counts.has_value());
  EXPECT_NEAR(count_route(inst), 0.0, 1e-12);
}

TEST(SolverExtensions, KeepTheOptimum) {
  std::mt19937_64 gen(17);
  for (int k = 0; k < 20; ++k) {
    const auto inst = testing::random_tiny(gen, k % 3 * 0.5);
    auto extended = build_model(inst);
    add_solver_extensions(extended, inst);
    const auto plain = make_backend("highs")->solve(build_model(inst), SolverOptions{});
    const auto ext = make_backend("highs")->solve(extended, SolverOptions{});
    ASSERT_EQ(plain.status, SolveStatus::Optimal);
    ASSERT_EQ(ext.status, SolveStatus::Optimal);
    EXPECT_NEAR(plain.objective, ext.objective, 1e-6) << "case " << k;
    EXPECT_LE(max_violation(extended, ext.values), 1e-5);
  }
}

}  // namespace
}  // namespace evmarket
