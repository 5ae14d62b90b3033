#include <gtest/gtest.h>

#include <set>

#include "evmarket/errors.hpp"
#include "evmarket/model.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

int count_prefix(const ModelDescription& m, std::string_view prefix) {
  int n = 0;
  for (const auto& v : m.variables) {
    if (v.name.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

TEST(BuildModel, TwoUsersFourSlotsOneRateVariableCounts) {
  const auto m = build_model(testing::two_by_four());
  EXPECT_EQ(m.count(VarKind::Binary), 44);
  EXPECT_EQ(m.count(VarKind::Continuous), 28);
  EXPECT_EQ(count_prefix(m, "z_"), 8);
  EXPECT_EQ(count_prefix(m, "xB_"), 8);
  EXPECT_EQ(count_prefix(m, "xN_"), 8);
  EXPECT_EQ(count_prefix(m, "y_"), 2);
  EXPECT_EQ(count_prefix(m, "a_"), 2);
  EXPECT_EQ(count_prefix(m, "zs_"), 8);
  EXPECT_EQ(count_prefix(m, "ze_"), 8);
  EXPECT_EQ(count_prefix(m, "pN_"), 8);
  EXPECT_EQ(count_prefix(m, "pF_"), 8);
  EXPECT_EQ(count_prefix(m, "q_"), 8);
  EXPECT_EQ(count_prefix(m, "pR_"), 4);
}

TEST(BuildModel, VariableNamesFollowIndexConvention) {
  const auto m = build_model(testing::two_by_four());
  const auto& L = m.layout;
  EXPECT_EQ(m.variables[static_cast<std::size_t>(L.z(1, 3, 0))].name, "z_1_3_0");
  EXPECT_EQ(m.variables[static_cast<std::size_t>(L.x_bid(0, 2, 0))].name, "xB_0_2_0");
  EXPECT_EQ(m.variables[static_cast<std::size_t>(L.z_start(1, 0))].name, "zs_1_0");
  EXPECT_EQ(m.variables[static_cast<std::size_t>(L.p_ref(3, 0))].name, "pR_3_0");
  EXPECT_EQ(m.find_variable("q_1_2"), L.q(1, 2));
  EXPECT_FALSE(m.find_variable("nope").has_value());
  std::set<std::string> names;
  for (const auto& v : m.variables) names.insert(v.name);
  EXPECT_EQ(names.size(), m.variables.size());
}

TEST(BuildModel, DomainsMatchVariableRoles) {
  const auto inst = testing::two_by_four();
  const auto m = build_model(inst);
  for (const auto& v : m.variables) {
    if (v.kind == VarKind::Binary) {
      EXPECT_EQ(v.lower, 0.0);
      EXPECT_EQ(v.upper, 1.0);
    } else {
      EXPECT_EQ(v.lower, 0.0) << v.name;
    }
  }
  EXPECT_EQ(m.variables[static_cast<std::size_t>(m.layout.p_ref(0, 0))].upper, inst.policy.price_big_m);
}

TEST(BuildModel, EveryRowReferencesDeclaredVariablesAndCarriesTag) {
  std::mt19937_64 gen(7);
  const auto m = build_model(testing::random_tiny(gen, 0.5));
  for (const auto& row : m.constraints) {
    EXPECT_FALSE(tag_code(row.tag).empty());
    EXPECT_EQ(row.name.rfind(std::string(tag_code(row.tag)), 0), 0u) << row.name;
    for (const auto& term : row.terms) {
      EXPECT_GE(term.var, 0);
      EXPECT_LT(term.var, static_cast<int>(m.variables.size()));
    }
  }
  for (const auto& term : m.objective) EXPECT_LT(term.var, static_cast<int>(m.variables.size()));
}

TEST(BuildModel, RowCountsPerTag) {
  const auto m = build_model(testing::two_by_four());
  // users I = 2, slots T = 4, rates R = 1
  EXPECT_EQ(m.rows_tagged(ConstraintTag::AcceptRate).size(), 2u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::Availability).size(), 8u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::SingleWindow).size(), 4u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::WindowStart).size(), 8u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::WindowEnd).size(), 8u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::DemandBounds).size(), 4u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::SlotCapacity).size(), 4u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::ChargerCount).size(), 4u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::DeliveredEnergy).size(), 8u);
  EXPECT_EQ(m.rows_tagged(ConstraintTag::RateLink).size(), 8u);
  for (auto tag : {ConstraintTag::PriceSplit, ConstraintTag::CounterCap, ConstraintTag::FinalPrice,
                   ConstraintTag::MinMargin, ConstraintTag::PriceCap, ConstraintTag::ReferenceFloor,
                   ConstraintTag::CounterAboveReference}) {
    EXPECT_EQ(m.rows_tagged(tag).size(), 8u) << tag_code(tag);
  }
  EXPECT_EQ(m.rows_tagged(ConstraintTag::BidShare).size(), 1u);
}

TEST(BuildModel, GammaZeroMakesShareRowVacuous) {
  const auto m = build_model(testing::two_by_four(0.0));
  const auto* row = m.rows_tagged(ConstraintTag::BidShare).front();
  EXPECT_EQ(row->rhs, 0.0);
  EXPECT_EQ(row->sense, Sense::GreaterEqual);
  for (const auto& term : row->terms) EXPECT_GE(term.coeff, 0.0);
}

TEST(BuildModel, UnavailableSlotsHaveNoAcceptanceTerm) {
  auto inst = testing::tiny_a();
  inst.bids[0].acceptable_slots.clear();
  const auto m = build_model(inst);
  for (const auto* row : m.rows_tagged(ConstraintTag::Availability)) {
    ASSERT_EQ(row->terms.size(), 1u);
    EXPECT_EQ(row->rhs, 0.0);
    EXPECT_EQ(row->sense, Sense::LessEqual);
  }
}

TEST(BuildModel, RejectsInvalidInstance) {
  auto inst = testing::tiny_a();
  inst.bids[0].q_min = 10.0;
  EXPECT_THROW(build_model(inst), InvalidInstance);
}

// Hand-built point for Tiny A: one countered slot at 3.75 in slot 0.
std::vector<double> tiny_a_point(const ModelDescription& m) {
  std::vector<double> x(m.variables.size(), 0.0);
  const auto& L = m.layout;
  x[L.z(0, 0, 0)] = 1;
  x[L.x_counter(0, 0, 0)] = 1;
  x[L.y(0, 0)] = 1;
  x[L.a(0)] = 1;
  x[L.z_start(0, 0)] = 1;
  x[L.z_end(0, 0)] = 1;
  x[L.p_counter(0, 0, 0)] = 3.75;
  x[L.p_final(0, 0, 0)] = 3.75;
  x[L.q(0, 0)] = 5.5;
  return x;
}

TEST(ModelEvaluation, HandBuiltOptimumIsFeasibleWithExpectedProfit) {
  const auto m = build_model(testing::tiny_a());
  const auto x = tiny_a_point(m);
  EXPECT_LE(max_violation(m, x), 1e-9);
  EXPECT_NEAR(objective_value(m, x), (3.75 - 1.5) * 5.5, 1e-12);
}

TEST(ModelEvaluation, SplitWindowViolatesContiguity) {
  auto inst = testing::two_by_four();
  inst.bids[0].q_max = 100.0;
  const auto m = build_model(inst);
  const auto& L = m.layout;
  std::vector<double> x(m.variables.size(), 0.0);
  // Slots 0 and 2 with a single start indicator cannot satisfy eq5.
  for (int t : {0, 2}) {
    x[L.z(0, t, 0)] = 1;
    x[L.x_bid(0, t, 0)] = 1;
    x[L.p_final(0, t, 0)] = 3.0;
    x[L.q(0, t)] = 5.5;
  }
  x[L.y(0, 0)] = 1;
  x[L.a(0)] = 1;
  x[L.z_start(0, 0)] = 1;
  x[L.z_end(0, 2)] = 1;
  for (int t = 0; t < 4; ++t) x[L.p_ref(t, 0)] = 3.0;
  EXPECT_GE(max_violation(m, x), 1.0 - 1e-12);
}

TEST(LpExport, ContainsSectionsAndNamedRows) {
  const auto text = to_lp_string(build_model(testing::tiny_a()));
  for (const char* needle : {"Maximize", "Subject To", "Bounds", "Binaries", "End", "eq18:", "eq12b_0_1_0:",
                             "z_0_1_0", "pR_0_0"}) {
    EXPECT_NE(text.find(needle), std::string::npos) << needle;
  }
}

TEST(TagCodes, RoundTrip) {
  for (int k = 0; k <= static_cast<int>(ConstraintTag::Aux); ++k) {
    const auto tag = static_cast<ConstraintTag>(k);
    EXPECT_EQ(tag_from_code(tag_code(tag)), tag);
  }
  EXPECT_FALSE(tag_from_code("eq99").has_value());
}

}  // namespace
}  // namespace evmarket
