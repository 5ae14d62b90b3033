#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evmarket/domain.hpp"
#include "evmarket/offer.hpp"
#include "evmarket/scenario.hpp"

namespace evmarket {

// Version stamped into every JSON document and checked on read.
constexpr int kSchemaVersion = 1;

// Money is written as a decimal string with six fractional digits.
std::string format_money(double value);
// Accepts "3.750000"-style strings and plain JSON-style numbers.
double parse_money(std::string_view text);

// JSON text of an instance. Parsing rejects unknown keys, a missing or
// different schema_version, and instances failing validation.
std::string instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(std::string_view text);

std::string offer_to_json(const OperatorOffer& offer);
OperatorOffer offer_from_json(std::string_view text);

// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

enum class OutputFormat { Csv, Json };

// Parses "csv", "json" or "csv,json".
std::vector<OutputFormat> parse_formats(std::string_view text);

// Sweep table, one row per cell in run_sweep order.
void write_sweep_csv(std::ostream& out, std::span<const SweepCell> cells);
std::string sweep_to_json(std::span<const SweepCell> cells);

// One row per user. Rejected users leave the rate, slot and price fields empty.
void write_detail_csv(std::ostream& out, const ScenarioResult& result, const ProblemInstance& instance);
std::string result_to_json(const ScenarioResult& result, const ProblemInstance& instance);

// User x slot matrix: 0 none, 1 at bid, 2 countered.
void write_allocation_csv(std::ostream& out, const OperatorOffer& offer, const ProblemInstance& instance);

// Writes instance.json and offer.json (always, so the run can be re-verified)
// plus detail and allocation files in each requested format. Returns the
// written paths; throws Error on I/O failure.
std::vector<std::filesystem::path> emit_results(const ScenarioResult& result, const ProblemInstance& instance,
                                                std::span<const OutputFormat> formats,
                                                const std::filesystem::path& directory);
std::vector<std::filesystem::path> emit_results(std::span<const SweepCell> cells,
                                                std::span<const OutputFormat> formats,
                                                const std::filesystem::path& directory);

}  // namespace evmarket
