#pragma once

#include <cstdint>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "evmarket/domain.hpp"

namespace evmarket::json_util {

using nlohmann::ordered_json;

// Shortest text that parses back to the same double.
std::string format_number(double value);

// Each throws ConfigError with `where` as context.
ordered_json parse(std::string_view text, std::string_view what);
void expect_object(const ordered_json& j, std::string_view where);
void expect_keys(const ordered_json& j, std::initializer_list<std::string_view> allowed, std::string_view where);
const ordered_json& field(const ordered_json& j, std::string_view key, std::string_view where);
double real(const ordered_json& j, std::string_view where);
std::int64_t integer(const ordered_json& j, std::string_view where);
bool boolean(const ordered_json& j, std::string_view where);
const ordered_json& array(const ordered_json& j, std::string_view where);
void check_schema(const ordered_json& j, std::string_view where);

ordered_json rate_to_json(const RateLevel& rate);
// A scalar cost_per_kwh is broadcast over num_slots.
RateLevel rate_from_json(const ordered_json& j, int num_slots, std::string_view where);
ordered_json policy_to_json(const PricingPolicy& policy);
// Keys absent from j keep their value from defaults.
PricingPolicy policy_from_json(const ordered_json& j, const PricingPolicy& defaults, std::string_view where);

}  // namespace evmarket::json_util
