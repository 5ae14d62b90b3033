#include "evmarket/scenario.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "evmarket/count_model.hpp"
#include "evmarket/model.hpp"
#include "evmarket/rng.hpp"

namespace evmarket {

namespace {

constexpr std::array<RateCatalogEntry, 3> kCatalog = {{{22.0, 1.5}, {50.0, 2.0}, {100.0, 2.5}}};
constexpr double kDefaultMarkupCap = 2.0;

double round_micro(double value) { return std::round(value * 1e6) / 1e6; }

}  // namespace

std::span<const RateCatalogEntry> rate_catalog() { return kCatalog; }

RateLevel standard_rate(double rate_kw, int num_slots, int charger_count) {
  for (const auto& entry : kCatalog) {
    if (entry.rate_kw == rate_kw) {
      return make_rate(rate_kw, entry.cost_per_kwh, kDefaultMarkupCap, charger_count, num_slots);
    }
  }
  throw ConfigError("no catalog cost for a " + std::to_string(rate_kw) + " kW rate (known: 22, 50, 100)");
}

StationConfig standard_station(int num_slots, std::span<const double> rates_kw) {
  StationConfig station;
  station.num_slots = num_slots;
  station.slot_minutes = 15.0;
  for (double kw : rates_kw) station.rates.push_back(standard_rate(kw, num_slots));
  return station;
}

std::vector<int> narrow_window(int num_slots, int window_slots) {
  const int start = std::max(0, (num_slots - window_slots) / 2);
  std::vector<int> slots;
  for (int t = start; t < std::min(num_slots, start + window_slots); ++t) slots.push_back(t);
  return slots;
}

void validate_spec(const ScenarioSpec& spec) {
  if (spec.user_count < 0) throw ConfigError("user_count must be non-negative");
  if (spec.bid_range.low > spec.bid_range.high) throw ConfigError("bid_range: low > high");
  if (!(spec.bid_range.high > 0.0)) throw ConfigError("bid_range: bids must be positive");
  if (spec.demand.q_min < 0.0 || spec.demand.q_min > spec.demand.q_max) {
    throw ConfigError("demand_bounds: need 0 <= q_min <= q_max");
  }
  if (spec.station.num_slots < 1) throw ConfigError("station: num_slots must be at least 1");
  if (spec.station.rates.empty()) throw ConfigError("station: at least one rate required");
  if (spec.availability.pattern == Availability::Pattern::Split) {
    const auto& a = spec.availability;
    if (a.narrow_users < 0 || a.narrow_users > spec.user_count) {
      throw ConfigError("availability: narrow_users must lie in [0, user_count]");
    }
    if (a.window_slots < 1 || a.window_slots > spec.station.num_slots) {
      throw ConfigError("availability: window slots must fit within the horizon");
    }
  }
  const auto& p = spec.policy;
  if (!(p.gamma >= 0.0 && p.gamma <= 1.0)) throw ConfigError("policy: gamma must lie in [0, 1]");
  if (!(p.epsilon >= 0.0) || !(p.alpha >= 1.0 + p.epsilon)) {
    throw ConfigError("policy: need epsilon >= 0 and alpha >= 1 + epsilon");
  }
}

void validate_sweep(const SweepSpec& spec) {
  validate_spec(spec.base);
  if (spec.gammas.empty() || spec.rate_configs.empty() || spec.bid_ranges.empty()) {
    throw ConfigError("sweep axes must be non-empty");
  }
  if (spec.seeds < 1) throw ConfigError("sweep needs at least one seed");
  for (const auto& rates : spec.rate_configs) {
    if (rates.empty()) throw ConfigError("sweep rate configuration is empty");
  }
  for (const auto& range : spec.bid_ranges) {
    if (range.low > range.high) throw ConfigError("bid_range: low > high");
  }
}

ProblemInstance generate_instance(const ScenarioSpec& spec) {
  validate_spec(spec);
  ProblemInstance instance;
  instance.station = spec.station;
  auto& station = instance.station;
  for (auto& rate : station.rates) {
    if (rate.cost_per_kwh.size() == 1) rate.cost_per_kwh.assign(static_cast<std::size_t>(station.num_slots), rate.cost_per_kwh[0]);
  }
  if (station.slot_capacity.empty()) {
    double capacity = 0.0;
    for (int r = 0; r < station.num_rates(); ++r) {
      capacity += station.rates[static_cast<std::size_t>(r)].charger_count * station.energy_per_slot(r);
    }
    station.slot_capacity.assign(static_cast<std::size_t>(station.num_slots), capacity);
  }

  std::vector<int> full(static_cast<std::size_t>(station.num_slots));
  for (int t = 0; t < station.num_slots; ++t) full[static_cast<std::size_t>(t)] = t;
  const bool split = spec.availability.pattern == Availability::Pattern::Split;
  const auto narrow = split ? narrow_window(station.num_slots, spec.availability.window_slots) : full;
  const int first_narrow = split ? spec.user_count - spec.availability.narrow_users : spec.user_count;

  for (int u = 0; u < spec.user_count; ++u) {
    auto rng = Rng::substream(spec.seed, kBidStream, static_cast<std::uint64_t>(u));
    UserBid bid;
    bid.user_id = u + 1;
    bid.bid_price = std::max(round_micro(rng.uniform(spec.bid_range.low, spec.bid_range.high)), 1e-6);
    bid.q_min = spec.demand.q_min;
    bid.q_max = spec.demand.q_max;
    bid.acceptable_slots = u >= first_narrow ? narrow : full;
    instance.bids.push_back(std::move(bid));
  }

  instance.policy = spec.policy;
  if (!(instance.policy.price_big_m > 0.0)) {
    instance.policy.price_big_m =
        round_micro(default_price_big_m(instance.bids, station, instance.policy.alpha));
  }
  return instance;
}

namespace {

ScenarioSpec base_spec(std::string name, std::initializer_list<double> rates_kw, double gamma) {
  ScenarioSpec spec;
  spec.name = std::move(name);
  spec.user_count = 10;
  spec.bid_range = {2.0, 4.0};
  spec.demand = {20.0, 40.0};
  std::vector<double> rates(rates_kw);
  spec.station = standard_station(48, rates);
  spec.policy.gamma = gamma;
  spec.policy.alpha = 2.5;
  spec.policy.epsilon = 0.5;
  spec.policy.price_big_m = 0.0;
  spec.seed = 1;
  return spec;
}

std::vector<RateLevel> rates_of(const ScenarioSpec& spec, std::initializer_list<double> rates_kw) {
  std::vector<RateLevel> rates;
  for (double kw : rates_kw) rates.push_back(standard_rate(kw, spec.station.num_slots));
  return rates;
}

const std::vector<double> kGammaAxis = {0.2, 0.4, 0.6, 0.8};

Preset single_rate_table(std::string name) {
  Preset p;
  p.name = std::move(name);
  p.description = "homogeneous users, one charger at a single rate; gamma x {22, 50, 100} kW";
  p.scenario = base_spec(p.name, {22.0}, 0.2);
  p.sweep.base = p.scenario;
  p.sweep.gammas = kGammaAxis;
  p.sweep.rate_configs = {rates_of(p.scenario, {22.0}), rates_of(p.scenario, {50.0}),
                          rates_of(p.scenario, {100.0})};
  p.sweep.bid_ranges = {p.scenario.bid_range};
  p.sweep.seeds = 50;
  return p;
}

Preset multi_rate(std::string name, std::string description, BidRange bids) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.scenario = base_spec(p.name, {22.0, 50.0, 100.0}, 0.2);
  p.scenario.bid_range = bids;
  p.sweep.base = p.scenario;
  p.sweep.gammas = kGammaAxis;
  p.sweep.rate_configs = {p.scenario.station.rates};
  p.sweep.bid_ranges = {bids};
  p.sweep.seeds = 50;
  return p;
}

Availability split_five_five() {
  return {Availability::Pattern::Split, 5, 8};
}

std::vector<Preset> all_presets() {
  std::vector<Preset> presets;
  presets.push_back(single_rate_table("baseline-single-rate"));
  presets.push_back(single_rate_table("table2"));
  presets.back().description = "alias of baseline-single-rate: the 12-cell gamma x rate table";

  presets.push_back(multi_rate("multi-rate", "homogeneous users, one charger at each of 22/50/100 kW",
                               {2.0, 4.0}));
  presets.push_back(multi_rate("expanded-bid-range", "multi-rate station with bids drawn from [1, 6]",
                               {1.0, 6.0}));
  {
    auto p = multi_rate("bid-range-series", "multi-rate station at gamma 0.4, bid range shifted", {2.0, 4.0});
    p.scenario.policy.gamma = 0.4;
    p.sweep.base = p.scenario;
    p.sweep.gammas = {0.4};
    p.sweep.bid_ranges = {{1.0, 3.0}, {2.0, 4.0}, {3.0, 5.0}, {4.0, 6.0}};
    presets.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "heterogeneous-availability";
    p.description = "5 users over the full horizon, 5 within a central 2-hour window; single charger";
    p.scenario = base_spec(p.name, {22.0}, 0.2);
    p.scenario.availability = split_five_five();
    p.sweep.base = p.scenario;
    p.sweep.gammas = kGammaAxis;
    p.sweep.rate_configs = {rates_of(p.scenario, {22.0}), rates_of(p.scenario, {50.0})};
    p.sweep.bid_ranges = {p.scenario.bid_range};
    p.sweep.seeds = 50;
    presets.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "mixed-22-50";
    p.description = "heterogeneous availability served by one 22 kW and one 50 kW charger";
    p.scenario = base_spec(p.name, {22.0, 50.0}, 0.2);
    p.scenario.availability = split_five_five();
    p.sweep.base = p.scenario;
    p.sweep.gammas = kGammaAxis;
    p.sweep.rate_configs = {p.scenario.station.rates};
    p.sweep.bid_ranges = {p.scenario.bid_range};
    p.sweep.seeds = 50;
    presets.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "large-scale";
    p.description = "40 users, 48 slots, one charger at each of 22/50/100 kW, demand 20-60 kWh";
    p.scenario = base_spec(p.name, {22.0, 50.0, 100.0}, 0.8);
    p.scenario.user_count = 40;
    // Room for two 100 kW slots per user.
    p.scenario.demand = {20.0, 60.0};
    p.sweep.base = p.scenario;
    p.sweep.gammas = {0.4, 0.8};
    p.sweep.rate_configs = {p.scenario.station.rates};
    p.sweep.bid_ranges = {{2.0, 4.0}, {1.0, 6.0}};
    p.sweep.seeds = 1;
    presets.push_back(std::move(p));
  }
  {
    auto p = multi_rate("utility-response",
                        "multi-rate station, bids in [1, 6], gamma 0.4, with sampled user preferences",
                        {1.0, 6.0});
    p.scenario.policy.gamma = 0.4;
    p.sweep.base = p.scenario;
    p.sweep.gammas = {0.4};
    presets.push_back(std::move(p));
  }
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : all_presets()) names.push_back(p.name);
  return names;
}

Preset find_preset(std::string_view name) {
  for (auto& p : all_presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::string_view to_string(Formulation formulation) {
  return formulation == Formulation::Counts ? "counts" : "slots";
}

namespace {

void require_optimal(const Solution& solution) {
  if (solution.status == SolveStatus::Infeasible) {
    throw SolveIncomplete(solution.status, "model is infeasible");
  }
  if (solution.status != SolveStatus::Optimal) {
    throw SolveIncomplete(solution.status, "solver stopped before proving optimality (" +
                                               std::string(to_string(solution.status)) + ")");
  }
}

// Full-model solution from the count model, or empty when it does not apply.
std::optional<Solution> solve_by_counts(const ProblemInstance& instance, const ModelDescription& full,
                                        const SolverBackend& backend, const SolverOptions& options) {
  const auto counts = build_count_model(instance);
  if (!counts) return std::nullopt;
  const auto reduced = backend.solve(counts->model, options);
  require_optimal(reduced);
  Solution solution;
  solution.status = SolveStatus::Optimal;
  solution.seconds = reduced.seconds;
  solution.values = expand_count_solution(*counts, reduced.values, instance, full);
  solution.objective = objective_value(full, solution.values);
  const double violation = max_violation(full, solution.values);
  if (violation > 1e-6) {
    throw SolverError("count solution breaks the full model by " + std::to_string(violation));
  }
  if (std::abs(solution.objective - reduced.objective) > 1e-6 * std::max(1.0, std::abs(reduced.objective))) {
    throw SolverError("count objective " + std::to_string(reduced.objective) + " differs from full objective " +
                      std::to_string(solution.objective));
  }
  return solution;
}

}  // namespace

ScenarioResult run_scenario(const ProblemInstance& instance, std::span<const UserPreference> prefs,
                            const RunOptions& options) {
  auto model = build_model(instance);
  const auto backend = options.backend.empty() ? backend_from_environment() : make_backend(options.backend);
  ScenarioResult result;
  std::optional<Solution> solution;
  if (options.use_count_model) solution = solve_by_counts(instance, model, *backend, options.solver);
  if (solution) {
    result.formulation = Formulation::Counts;
  } else {
    add_solver_extensions(model, instance);
    solution = backend->solve(model, options.solver);
    require_optimal(*solution);
  }
  result.solve_seconds = solution->seconds;
  result.offer = extract_offer(model, *solution, instance, options.solver.integrality_tolerance);
  auto report = verify_offer(result.offer, instance);
  if (!report.clean()) throw VerificationFailed(std::move(report));
  result.decisions = decide(result.offer, instance, prefs);
  result.metrics = compute_metrics(result.offer, instance,
                                   std::span<const AcceptanceDecision>(result.decisions), options.averaging);
  return result;
}

std::string SweepCell::rate_label() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < rates.size(); ++r) {
    if (r > 0) out << '+';
    out << rates[r].rate_kw;
  }
  return out.str();
}

namespace {

struct SeedOutcome {
  bool ok = false;
  ScenarioMetrics metrics;
  enum class Failure { None, Infeasible, Limit, Other } failure = Failure::None;
  std::string error;
};

ScenarioSpec cell_spec(const SweepSpec& sweep, const SweepCell& cell, std::uint64_t seed) {
  ScenarioSpec spec = sweep.base;
  spec.policy.gamma = cell.gamma;
  spec.bid_range = cell.bid_range;
  spec.station.rates = cell.rates;
  for (auto& rate : spec.station.rates) {
    if (rate.cost_per_kwh.size() != static_cast<std::size_t>(spec.station.num_slots)) {
      rate.cost_per_kwh.assign(static_cast<std::size_t>(spec.station.num_slots), rate.cost_per_kwh.at(0));
    }
  }
  // Capacity follows the cell's chargers unless the base pins it.
  if (sweep.base.station.slot_capacity.empty()) spec.station.slot_capacity.clear();
  spec.seed = seed;
  return spec;
}

SeedOutcome run_seed(const ScenarioSpec& spec, const RunOptions& options) {
  SeedOutcome out;
  try {
    const auto instance = generate_instance(spec);
    const auto prefs = sample_preferences(spec.user_count, spec.seed);
    out.metrics = run_scenario(instance, prefs, options).metrics;
    out.ok = true;
  } catch (const SolveIncomplete& e) {
    out.failure = e.status() == SolveStatus::Infeasible ? SeedOutcome::Failure::Infeasible
                                                         : SeedOutcome::Failure::Limit;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.failure = SeedOutcome::Failure::Other;
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<SweepCell> run_sweep(const SweepSpec& spec, const RunOptions& options) {
  validate_sweep(spec);
  std::vector<SweepCell> cells;
  for (const auto& rates : spec.rate_configs) {
    for (const auto& range : spec.bid_ranges) {
      for (double gamma : spec.gammas) {
        SweepCell cell;
        cell.gamma = gamma;
        cell.rates = rates;
        cell.bid_range = range;
        cells.push_back(std::move(cell));
      }
    }
  }

  const std::size_t seeds = static_cast<std::size_t>(spec.seeds);
  const std::size_t jobs = cells.size() * seeds;
  std::vector<SeedOutcome> outcomes(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const auto& cell = cells[job / seeds];
      const auto seed = spec.base.seed + job % seeds;
      outcomes[job] = run_seed(cell_spec(spec, cell, seed), options);
    }
  };
  const int workers = std::clamp(options.workers, 1, static_cast<int>(std::max<std::size_t>(jobs, 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto& cell = cells[c];
    for (std::size_t k = 0; k < seeds; ++k) {
      const auto& outcome = outcomes[c * seeds + k];
      const auto seed = spec.base.seed + k;
      if (outcome.ok) {
        cell.runs.push_back({seed, outcome.metrics});
        continue;
      }
      switch (outcome.failure) {
        case SeedOutcome::Failure::Infeasible: ++cell.infeasible; break;
        case SeedOutcome::Failure::Limit: ++cell.limit_reached; break;
        default: ++cell.failed; break;
      }
      cell.errors.push_back("seed " + std::to_string(seed) + ": " + outcome.error);
    }
    cell.metrics = aggregate(cell.runs);
  }
  return cells;
}

}  // namespace evmarket
