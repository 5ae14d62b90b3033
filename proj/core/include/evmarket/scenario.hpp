#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evmarket/domain.hpp"
#include "evmarket/errors.hpp"
#include "evmarket/metrics.hpp"
#include "evmarket/offer.hpp"
#include "evmarket/solver.hpp"
#include "evmarket/user_response.hpp"

namespace evmarket {

struct BidRange {
  double low = 2.0;
  double high = 4.0;
  friend bool operator==(const BidRange&, const BidRange&) = default;
};

struct DemandBounds {
  double q_min = 20.0;
  double q_max = 40.0;
  friend bool operator==(const DemandBounds&, const DemandBounds&) = default;
};

struct Availability {
  enum class Pattern { FullHorizon, Split };
  Pattern pattern = Pattern::FullHorizon;
  // Split only: the last narrow_users users are available for window_slots
  // consecutive slots centred in the horizon; the others for all slots.
  int narrow_users = 0;
  int window_slots = 0;
  friend bool operator==(const Availability&, const Availability&) = default;
};

struct ScenarioSpec {
  std::string name;
  int user_count = 10;
  BidRange bid_range;
  DemandBounds demand;
  Availability availability;
  // An empty slot_capacity means sum_r M_r * E_r in every slot.
  StationConfig station;
  // A non-positive price_big_m means the default max(alpha c, bid + delta) + 1.
  PricingPolicy policy;
  std::uint64_t seed = 1;
  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

struct SweepSpec {
  ScenarioSpec base;
  std::vector<double> gammas;
  std::vector<std::vector<RateLevel>> rate_configs;
  std::vector<BidRange> bid_ranges;
  // Seeds base.seed, base.seed + 1, ... per cell.
  int seeds = 50;
};

struct RateCatalogEntry {
  double rate_kw;
  double cost_per_kwh;
};

// 22/50/100 kW at 1.5/2.0/2.5 SEK per kWh.
std::span<const RateCatalogEntry> rate_catalog();

// Catalog rate with a markup cap of 2 SEK and one charger. Throws ConfigError
// for kW values outside the catalog.
RateLevel standard_rate(double rate_kw, int num_slots, int charger_count = 1);

// Station with standard rates, 15-minute slots and automatic capacity.
StationConfig standard_station(int num_slots, std::span<const double> rates_kw);

// Throws ConfigError naming the first problem.
void validate_spec(const ScenarioSpec& spec);
void validate_sweep(const SweepSpec& spec);

// Deterministic per seed. User ids are 1-based; bids are rounded to 1e-6 SEK.
ProblemInstance generate_instance(const ScenarioSpec& spec);

// Slots of the narrow availability window.
std::vector<int> narrow_window(int num_slots, int window_slots);

struct Preset {
  std::string name;
  std::string description;
  ScenarioSpec scenario;
  SweepSpec sweep;
};

std::vector<std::string> preset_names();
// Throws ConfigError for unknown names.
Preset find_preset(std::string_view name);

struct RunOptions {
  SolverOptions solver;
  // Empty: EVMARKET_SOLVER or the default adapter.
  std::string backend;
  PriceAveraging averaging = PriceAveraging::Slots;
  // Worker threads for sweeps.
  int workers = 1;
  // Solve the compact count model when the instance allows it.
  bool use_count_model = true;
};

enum class Formulation { Slots, Counts };

std::string_view to_string(Formulation formulation);

struct ScenarioResult {
  OperatorOffer offer;
  std::vector<AcceptanceDecision> decisions;
  ScenarioMetrics metrics;
  double solve_seconds = 0.0;
  Formulation formulation = Formulation::Slots;
};

class SolveIncomplete : public Error {
 public:
  SolveIncomplete(SolveStatus status, const std::string& what) : Error(what), status_(status) {}
  SolveStatus status() const { return status_; }

 private:
  SolveStatus status_;
};

class VerificationFailed : public Error {
 public:
  explicit VerificationFailed(ViolationReport report)
      : Error("offer failed verification:\n" + report.summary()), report_(std::move(report)) {}
  const ViolationReport& report() const { return report_; }

 private:
  ViolationReport report_;
};

// build_model -> solve -> extract_offer -> verify_offer -> decide -> compute_metrics.
// When build_count_model applies, the count model is solved instead and its
// expansion is checked against every row of the full model before use.
// Throws SolveIncomplete when the solver stops without proving optimality and
// VerificationFailed when the extracted offer breaks a constraint.
ScenarioResult run_scenario(const ProblemInstance& instance, std::span<const UserPreference> prefs,
                            const RunOptions& options);

struct SweepCell {
  double gamma = 0.0;
  std::vector<RateLevel> rates;
  BidRange bid_range;
  AggregateMetrics metrics;
  std::vector<SeedMetrics> runs;
  int infeasible = 0;
  int limit_reached = 0;
  int failed = 0;
  std::vector<std::string> errors;

  // "22" or "22+50+100".
  std::string rate_label() const;
};

// One cell per (rate config, bid range, gamma), in that nesting order.
// Failures are recorded on the cell and the sweep continues.
std::vector<SweepCell> run_sweep(const SweepSpec& spec, const RunOptions& options);

}  // namespace evmarket
