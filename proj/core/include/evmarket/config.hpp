#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evmarket/io.hpp"
#include "evmarket/scenario.hpp"

namespace evmarket {

struct RunConfig {
  // Set when the scenario came from a built-in preset.
  std::optional<std::string> preset;
  ScenarioSpec scenario;
  // sweep.base always equals scenario.
  SweepSpec sweep;
  RunOptions options;
  std::filesystem::path output_dir = "evmarket-out";
  std::vector<OutputFormat> formats = {OutputFormat::Csv, OutputFormat::Json};
};

// Command-line values; each one that is set replaces the file's value.
struct ConfigOverrides {
  std::optional<std::string> preset;
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<int> seeds;
  std::optional<int> users;
  std::optional<int> slots;
  // Groups of catalog kW values, e.g. "22,50;100" is {{22, 50}, {100}}.
  std::optional<std::vector<std::vector<double>>> rates;
  // e.g. "1,3;2,4".
  std::optional<std::vector<BidRange>> bid_ranges;
  std::optional<std::filesystem::path> out;
  std::optional<std::vector<OutputFormat>> formats;
  std::optional<double> time_limit;
  std::optional<int> threads;
  std::optional<int> jobs;
};

std::vector<std::vector<double>> parse_rate_groups(std::string_view text);
std::vector<BidRange> parse_bid_ranges(std::string_view text);

// JSON config text. Top-level keys: schema_version, preset, scenario, sweep,
// solver, jobs, averaging, output. A preset and an inline scenario are
// mutually exclusive. Throws ConfigError.
RunConfig parse_config_text(std::string_view text, const ConfigOverrides& overrides = {});

// Reads the file when given; otherwise the overrides must name a preset.
RunConfig parse_config(const std::optional<std::filesystem::path>& path, const ConfigOverrides& overrides);

}  // namespace evmarket
