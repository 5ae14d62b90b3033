#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "evmarket/config.hpp"
#include "evmarket/errors.hpp"
#include "evmarket/io.hpp"
#include "evmarket/oracle.hpp"
#include "support/fixtures.hpp"

namespace evmarket {
namespace {

TEST(Money, SixDecimalStringsRoundTrip) {
  EXPECT_EQ(format_money(3.75), "3.750000");
  EXPECT_EQ(format_money(-1.25), "-1.250000");
  EXPECT_EQ(parse_money("3.750000"), 3.75);
  EXPECT_EQ(parse_money("2"), 2.0);
  EXPECT_THROW(parse_money("three"), Error);
}

TEST(InstanceJson, RoundTrip) {
  std::mt19937_64 gen(4);
  for (int k = 0; k < 20; ++k) {
    const auto inst = testing::random_tiny(gen, 0.5);
    EXPECT_EQ(instance_from_json(instance_to_json(inst)), inst);
  }
}

TEST(InstanceJson, RejectsUnknownKeysAndSchema) {
  auto text = instance_to_json(testing::tiny_a());
  const auto pos = text.find('{');
  auto extra = text;
  extra.insert(pos + 1, "\"surprise\": 1,");
  EXPECT_THROW(instance_from_json(extra), Error);
  auto bumped = text;
  const auto v = bumped.find("\"schema_version\"");
  ASSERT_NE(v, std::string::npos);
  const auto digit = bumped.find('1', v);
  bumped[digit] = '9';
  EXPECT_THROW(instance_from_json(bumped), Error);
}

TEST(OfferJson, RoundTripKeepsVerification) {
  const auto inst = testing::two_by_four(0.5);
  const auto offer = exhaustive_oracle(inst);
  const auto back = offer_from_json(offer_to_json(offer));
  EXPECT_EQ(back.users.size(), offer.users.size());
  EXPECT_NEAR(back.objective, offer.objective, 1e-6);
  EXPECT_TRUE(verify_offer(back, inst).clean());
}

TEST(Formats, Parse) {
  EXPECT_EQ(parse_formats("csv"), std::vector<OutputFormat>{OutputFormat::Csv});
  EXPECT_EQ(parse_formats("csv,json"), (std::vector<OutputFormat>{OutputFormat::Csv, OutputFormat::Json}));
  EXPECT_THROW(parse_formats("xml"), ConfigError);
}

TEST(Config, PresetWithOverrides) {
  ConfigOverrides o;
  o.preset = "multi-rate";
  o.gamma = 0.6;
  o.seeds = 3;
  o.bid_ranges = parse_bid_ranges("1,3;2,4");
  const auto config = parse_config(std::nullopt, o);
  EXPECT_EQ(config.preset, "multi-rate");
  EXPECT_EQ(config.scenario.policy.gamma, 0.6);
  EXPECT_EQ(config.sweep.seeds, 3);
  EXPECT_EQ(config.sweep.bid_ranges.size(), 2u);
  EXPECT_EQ(config.sweep.base, config.scenario);
}

TEST(Config, InlineScenario) {
  const auto config = parse_config_text(R"({
    "schema_version": 1,
    "scenario": {"user_count": 3, "bid_range": [1, 6], "demand_bounds": [10, 20],
                 "station": {"num_slots": 12, "rates": [22, 100]},
                 "policy": {"gamma": 0.5}},
    "sweep": {"gammas": [0.5], "seeds": 2},
    "output": {"directory": "out", "formats": ["json"]}
  })");
  EXPECT_EQ(config.scenario.user_count, 3);
  EXPECT_EQ(config.scenario.station.rates.size(), 2u);
  EXPECT_EQ(config.scenario.station.rates[1].cost(0), 2.5);
  EXPECT_EQ(config.sweep.seeds, 2);
  EXPECT_EQ(config.formats, std::vector<OutputFormat>{OutputFormat::Json});
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config_text(R"({"preset": "multi-rate", "scenario": {}})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"preset": "nope"})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"preset": "multi-rate", "colour": 1})"), ConfigError);
  EXPECT_THROW(parse_config_text("{not json"), ConfigError);
  EXPECT_THROW(parse_config(std::nullopt, ConfigOverrides{}), ConfigError);
  ConfigOverrides unknown_rate;
  unknown_rate.preset = "multi-rate";
  unknown_rate.rates = parse_rate_groups("22,33");
  EXPECT_THROW(parse_config(std::nullopt, unknown_rate), ConfigError);
  EXPECT_THROW(parse_rate_groups("22,fast"), ConfigError);
  EXPECT_THROW(parse_bid_ranges("4,2"), ConfigError);
}

TEST(Csv, SweepAndDetail) {
  SweepCell cell;
  cell.gamma = 0.4;
  cell.rates = {make_rate(22.0, 1.5, 2.0, 1, 4)};
  std::vector<SeedMetrics> runs(2);
  runs[0].metrics.operator_profit = 10.0;
  runs[1].metrics.operator_profit = 20.0;
  cell.metrics = aggregate(runs);
  std::ostringstream sweep;
  const std::vector<SweepCell> cells = {cell};
  write_sweep_csv(sweep, cells);
  const auto text = sweep.str();
  EXPECT_NE(text.find("gamma"), std::string::npos);
  EXPECT_NE(text.find("15.000000"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);

  const auto inst = testing::two_by_four(0.5);
  ScenarioResult result;
  result.offer = exhaustive_oracle(inst);
  result.metrics = compute_metrics(result.offer, inst);
  std::ostringstream detail;
  write_detail_csv(detail, result, inst);
  const auto rows = detail.str();
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 3);
}

TEST(EmitResults, WritesRequestedFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "evmarket_test_emit";
  std::filesystem::remove_all(dir);
  const auto inst = testing::two_by_four(0.5);
  ScenarioResult result;
  result.offer = exhaustive_oracle(inst);
  result.metrics = compute_metrics(result.offer, inst);
  const std::vector<OutputFormat> formats = {OutputFormat::Csv};
  const auto files = emit_results(result, inst, formats, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "instance.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "offer.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "detail.csv"));
  EXPECT_EQ(instance_from_json(read_text_file(dir / "instance.json")), inst);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace evmarket
