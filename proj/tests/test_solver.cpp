#include <gtest/gtest.h>

#include <cstdlib>

#include "evmarket/errors.hpp"
#include "evmarket/model.hpp"
#include "evmarket/oracle.hpp"
#include "evmarket/scenario.hpp"
#include "evmarket/solver.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

// Closed-form optimum for the one-user, two-slot fixtures: the best single
// slot is either at the bid or countered at min(bid + delta, alpha c).
constexpr double kTinyEnergy = 5.5;
constexpr double kTinyCost = 1.5;
constexpr double kTinyCap = 2.5 * kTinyCost;

Solution solve_instance(const ProblemInstance& inst) {
  return make_backend("highs")->solve(build_model(inst), SolverOptions{});
}

TEST(Solver, TinyAWithoutShareCountersAtCap) {
  const double expected = (std::min(3.0 + 2.0, kTinyCap) - kTinyCost) * kTinyEnergy;
  const auto sol = solve_instance(testing::tiny_a(0.0));
  ASSERT_EQ(sol.status, SolveStatus::Optimal);
  EXPECT_NEAR(sol.objective, expected, 1e-6);
  EXPECT_NEAR(sol.objective, 12.375, 1e-9);
}

TEST(Solver, TinyAWithFullShareServesAtBid) {
  const double expected = (3.0 - kTinyCost) * kTinyEnergy;
  const auto sol = solve_instance(testing::tiny_a(1.0));
  ASSERT_EQ(sol.status, SolveStatus::Optimal);
  EXPECT_NEAR(sol.objective, expected, 1e-6);
}

TEST(Solver, TinyBIsRejected) {
  const auto inst = testing::tiny_b();
  const auto model = build_model(inst);
  const auto sol = make_backend("highs")->solve(model, SolverOptions{});
  ASSERT_EQ(sol.status, SolveStatus::Optimal);
  EXPECT_NEAR(sol.objective, 0.0, 1e-9);
  EXPECT_NEAR(sol.value(model, "a_0"), 0.0, 1e-6);
}

TEST(Solver, SolutionSatisfiesModelRows) {
  std::mt19937_64 gen(11);
  for (int k = 0; k < 10; ++k) {
    const auto model = build_model(testing::random_tiny(gen, 0.5));
    const auto sol = make_backend("highs")->solve(model, SolverOptions{});
    ASSERT_EQ(sol.status, SolveStatus::Optimal);
    EXPECT_LE(max_violation(model, sol.values), 1e-5);
    EXPECT_NEAR(objective_value(model, sol.values), sol.objective, 1e-6);
  }
}

TEST(Solver, ReportsInfeasibleModel) {
  ModelDescription m;
  m.variables = {{"x", VarKind::Binary, 0.0, 1.0}};
  m.constraints = {{"aux_lo", ConstraintTag::Aux, {{0, 1.0}}, Sense::GreaterEqual, 2.0}};
  m.objective = {{0, 1.0}};
  const auto sol = make_backend("highs")->solve(m, SolverOptions{});
  EXPECT_EQ(sol.status, SolveStatus::Infeasible);
  EXPECT_FALSE(sol.has_incumbent());
}

TEST(Solver, StatusNames) {
  EXPECT_EQ(to_string(SolveStatus::Optimal), "optimal");
  EXPECT_EQ(to_string(SolveStatus::Infeasible), "infeasible");
  EXPECT_EQ(to_string(SolveStatus::LimitReached), "limit-reached");
}

TEST(Solver, BackendSelection) {
  EXPECT_EQ(backend_names(), std::vector<std::string>{"highs"});
  EXPECT_THROW(make_backend("cplex"), SolverError);
  ::setenv("EVMARKET_SOLVER", "nope", 1);
  EXPECT_THROW(backend_from_environment(), SolverError);
  ::setenv("EVMARKET_SOLVER", "highs", 1);
  EXPECT_EQ(backend_from_environment()->name(), "highs");
  ::unsetenv("EVMARKET_SOLVER");
  EXPECT_EQ(backend_from_environment()->name(), "highs");
}

TEST(Solver, RepeatedSolvesAreIdentical) {
  std::mt19937_64 gen(5);
  const auto model = build_model(testing::random_tiny(gen, 0.0));
  const auto a = make_backend("highs")->solve(model, SolverOptions{});
  const auto b = make_backend("highs")->solve(model, SolverOptions{});
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(Oracle, TinyAMatchesClosedForm) {
  const auto offer = exhaustive_oracle(testing::tiny_a(0.0));
  EXPECT_NEAR(offer.objective, 12.375, 1e-9);
  ASSERT_TRUE(offer.users[0].accepted);
  ASSERT_EQ(offer.users[0].slots.size(), 1u);
  EXPECT_FALSE(offer.users[0].slots[0].at_bid);
  EXPECT_NEAR(offer.users[0].slots[0].final_price, 3.75, 1e-12);
  EXPECT_TRUE(verify_offer(offer, testing::tiny_a(0.0)).clean());
}

TEST(Oracle, TinyAFullShare) {
  const auto offer = exhaustive_oracle(testing::tiny_a(1.0));
  EXPECT_NEAR(offer.objective, 8.25, 1e-9);
  EXPECT_TRUE(offer.users[0].slots.at(0).at_bid);
}

TEST(Oracle, TinyBRejects) {
  const auto offer = exhaustive_oracle(testing::tiny_b());
  EXPECT_EQ(offer.objective, 0.0);
  EXPECT_FALSE(offer.users[0].accepted);
  EXPECT_TRUE(offer.users[0].slots.empty());
}

TEST(Oracle, EmptyInstance) {
  auto inst = testing::tiny_a();
  inst.bids.clear();
  const auto offer = exhaustive_oracle(inst);
  EXPECT_TRUE(offer.users.empty());
  EXPECT_EQ(offer.objective, 0.0);
}

TEST(Oracle, RejectsOverBudget) {
  auto inst = testing::two_by_four();
  inst.station.num_slots = 9;
  inst.station.rates = {make_rate(22.0, 1.5, 2.0, 1, 9)};
  inst.station.slot_capacity.assign(9, 5.5);
  EXPECT_THROW(exhaustive_oracle(inst), OracleBudgetExceeded);
}

TEST(ExtractOffer, TinyASolveGivesOneCounteredSlot) {
  const auto inst = testing::tiny_a(0.0);
  const auto model = build_model(inst);
  const auto sol = make_backend("highs")->solve(model, SolverOptions{});
  const auto offer = extract_offer(model, sol, inst);
  ASSERT_TRUE(offer.users[0].accepted);
  EXPECT_EQ(offer.users[0].rate_index, 0);
  ASSERT_EQ(offer.users[0].slots.size(), 1u);
  const auto& slot = offer.users[0].slots[0];
  EXPECT_FALSE(slot.at_bid);
  EXPECT_NEAR(slot.final_price, 3.75, 1e-6);
  EXPECT_NEAR(slot.energy_kwh, 5.5, 1e-12);
  EXPECT_TRUE(verify_offer(offer, inst).clean());
}

TEST(ExtractOffer, AtBidSlotsCarryTheBid) {
  auto inst = testing::two_by_four(0.0);
  inst.bids[0].q_max = 11.0;
  const auto model = build_model(inst);
  std::vector<double> x(model.variables.size(), 0.0);
  const auto& L = model.layout;
  for (int t : {1, 2}) {
    x[L.z(0, t, 0)] = x[L.x_bid(0, t, 0)] = 1;
    x[L.p_final(0, t, 0)] = 3.0;
    x[L.q(0, t)] = 5.5;
    x[L.p_ref(t, 0)] = 3.0;
  }
  x[L.y(0, 0)] = x[L.a(0)] = x[L.z_start(0, 1)] = x[L.z_end(0, 2)] = 1;
  Solution sol{SolveStatus::Optimal, objective_value(model, x), x, 0.0};
  const auto offer = extract_offer(model, sol, inst);
  ASSERT_EQ(offer.users[0].slots.size(), 2u);
  EXPECT_EQ(offer.users[0].slots[0].slot, 1);
  EXPECT_EQ(offer.users[0].slots[1].slot, 2);
  for (const auto& s : offer.users[0].slots) {
    EXPECT_TRUE(s.at_bid);
    EXPECT_EQ(s.final_price, 3.0);
  }
  EXPECT_FALSE(offer.users[1].accepted);
  EXPECT_TRUE(offer.users[1].slots.empty());
  EXPECT_FALSE(offer.users[1].rate_index.has_value());
}

TEST(ExtractOffer, FlagsFractionalBinaries) {
  const auto inst = testing::tiny_a(0.0);
  const auto model = build_model(inst);
  auto sol = make_backend("highs")->solve(model, SolverOptions{});
  sol.values[static_cast<std::size_t>(model.layout.a(0))] = 0.4;
  EXPECT_THROW(extract_offer(model, sol, inst), NonIntegralSolution);
}

TEST(RunScenario, TinyPipelines) {
  const std::vector<UserPreference> prefs(1);
  const auto a = run_scenario(testing::tiny_a(0.0), prefs, RunOptions{});
  EXPECT_NEAR(a.metrics.operator_profit, 12.375, 1e-6);
  const auto b = run_scenario(testing::tiny_b(), prefs, RunOptions{});
  EXPECT_EQ(b.metrics.acceptance_rate, 0.0);
  EXPECT_TRUE(b.decisions.empty());
}

}  // namespace
}  // namespace evmarket
