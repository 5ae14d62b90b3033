#pragma once

#include <optional>
#include <string>
#include <vector>

namespace evmarket {

// Prices and costs are SEK per kWh, energies kWh, powers kW, durations minutes.

// One user's submission for the upcoming horizon.
struct UserBid {
  int user_id = 0;
  double bid_price = 0.0;
  double q_min = 0.0;
  double q_max = 0.0;
  // Sorted, duplicate-free slot indices in [0, num_slots).
  std::vector<int> acceptable_slots;

  bool accepts(int slot) const;

  friend bool operator==(const UserBid&, const UserBid&) = default;
};

struct RateLevel {
  double rate_kw = 0.0;
  // Unit cost per kWh, one entry per slot.
  std::vector<double> cost_per_kwh;
  double max_markup = 0.0;
  int charger_count = 0;

  double cost(int slot) const { return cost_per_kwh.at(static_cast<std::size_t>(slot)); }
  double max_cost() const;

  friend bool operator==(const RateLevel&, const RateLevel&) = default;
};

struct StationConfig {
  int num_slots = 0;
  double slot_minutes = 15.0;
  // Energy the whole station may deliver in each slot.
  std::vector<double> slot_capacity;
  std::vector<RateLevel> rates;

  int num_rates() const { return static_cast<int>(rates.size()); }
  double energy_per_slot(int rate_index) const;

  friend bool operator==(const StationConfig&, const StationConfig&) = default;
};

struct PricingPolicy {
  // Minimum share of assigned slot-rate cells that must be priced at the bid.
  double gamma = 0.0;
  // Price cap as a multiple of cost.
  double alpha = 2.5;
  // Minimum margin: prices must be at least (1 + epsilon) * cost.
  double epsilon = 0.5;
  // Big-M for the reference-price linking rows.
  double price_big_m = 0.0;

  friend bool operator==(const PricingPolicy&, const PricingPolicy&) = default;
};

struct ProblemInstance {
  std::vector<UserBid> bids;
  StationConfig station;
  PricingPolicy policy;

  int num_users() const { return static_cast<int>(bids.size()); }
  int num_slots() const { return station.num_slots; }
  int num_rates() const { return station.num_rates(); }

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

// E_r = R_r * tau / 60.
double energy_per_slot(const RateLevel& rate, double slot_minutes);

// Smallest big-M the validator accepts for these bids and rates.
double minimum_price_big_m(const std::vector<UserBid>& bids, const StationConfig& station,
                           double alpha);

// Default big-M: one SEK above the minimum.
double default_price_big_m(const std::vector<UserBid>& bids, const StationConfig& station,
                           double alpha);

// A rate level with a constant cost broadcast over the horizon.
RateLevel make_rate(double rate_kw, double cost_per_kwh, double max_markup, int charger_count,
                    int num_slots);

struct Violation {
  std::string field;
  std::optional<int> user_id;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationResult validate_instance(const ProblemInstance& instance);

// Throws InvalidInstance carrying the summary when validation fails.
void require_valid(const ProblemInstance& instance);

}  // namespace evmarket
