// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "evmarket/metrics.hpp"
#include "evmarket/model.hpp"
#include "evmarket/oracle.hpp"
#include "evmarket/scenario.hpp"
#include "evmarket/solver.hpp"
#include "evmarket/user_response.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace evmarket;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

struct Run {
  ProblemInstance instance;
  ScenarioResult result;
  double wall_seconds = 0.0;
  std::string error;
  bool ok() const { return error.empty(); }
};

struct Cell {
  double gamma;
  std::vector<RateLevel> rates;
  BidRange bids;
};

// Seeds per sweep cell for the invariant suite. Presets solved by the slot
// model cost seconds per run rather than milliseconds, so they get fewer.
constexpr int kInvariantSeeds = 5;
constexpr int kInvariantSeedsSlotModel = 3;

class Runner {
 public:
  const Run& get(const Preset& preset, const Cell& cell, std::uint64_t seed) {
    const auto key = std::make_tuple(preset.name, cell.gamma, label(cell.rates), cell.bids.low, cell.bids.high, seed);
    auto found = cache_.find(key);
    if (found != cache_.end()) return found->second;
    ScenarioSpec spec = preset.sweep.base;
    spec.policy.gamma = cell.gamma;
    spec.bid_range = cell.bids;
    spec.station.rates = cell.rates;
    if (preset.sweep.base.station.slot_capacity.empty()) spec.station.slot_capacity.clear();
    spec.seed = seed;
    Run run;
    const auto start = Clock::now();
    try {
      run.instance = generate_instance(spec);
      run.result = run_scenario(run.instance, sample_preferences(spec.user_count, seed), RunOptions{});
    } catch (const std::exception& e) {
      run.error = e.what();
    }
    run.wall_seconds = seconds_since(start);
    return cache_.emplace(key, std::move(run)).first->second;
  }

 private:
  static std::string label(const std::vector<RateLevel>& rates) {
    std::string out;
    for (const auto& r : rates) out += std::to_string(r.rate_kw) + 'x' + std::to_string(r.charger_count) + ';';
    return out;
  }
  std::map<std::tuple<std::string, double, std::string, double, double, std::uint64_t>, Run> cache_;
};

std::vector<Cell> cells_of(const Preset& preset) {
  std::vector<Cell> cells;
  for (const auto& rates : preset.sweep.rate_configs) {
    for (const auto& bids : preset.sweep.bid_ranges) {
      for (double gamma : preset.sweep.gammas) cells.push_back({gamma, rates, bids});
    }
  }
  return cells;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Verdict()>& check) {
  const auto start = Clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::cout << id << ' ' << (v.pass ? "PASS" : "FAIL") << ' ' << title << ": " << v.detail << " ["
            << fmt("%.1f", seconds_since(start)) << " s]" << std::endl;
}

Verdict oracle_equivalence() {
  std::mt19937_64 gen(20240611);
  const double gammas[] = {0.0, 0.5, 1.0};
  const auto backend = make_backend("highs");
  double worst = 0.0;
  int bad = 0;
  const int count = 200;
  const auto start = Clock::now();
  for (int k = 0; k < count; ++k) {
    const auto inst = testing::random_tiny(gen, gammas[k % 3]);
    const auto oracle = exhaustive_oracle(inst);
    const auto model = build_model(inst);
    const auto sol = backend->solve(model, SolverOptions{});
    const auto plain = extract_offer(model, sol, inst);
    const auto pipeline = run_scenario(inst, std::vector<UserPreference>(inst.bids.size()), RunOptions{});
    const double gap = std::max(std::abs(plain.objective - oracle.objective),
                                std::abs(pipeline.offer.objective - oracle.objective));
    worst = std::max(worst, gap);
    const bool clean = verify_offer(oracle, inst).clean() && verify_offer(plain, inst).clean() &&
                       verify_offer(pipeline.offer, inst).clean();
    if (sol.status != SolveStatus::Optimal || gap > 1e-6 || !clean) ++bad;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << count << " instances, " << bad << " mismatched or unverified, max gap " << fmt("%.2e", worst) << ", "
    << fmt("%.1f", elapsed) << " s";
  return {bad == 0 && elapsed <= 300.0, d.str()};
}

Verdict invariant_suite(Runner& runner) {
  int runs = 0, violations = 0, errors = 0;
  std::string first;
  for (const auto& name : preset_names()) {
    const auto preset = find_preset(name);
    const bool slot_model = preset.scenario.availability.pattern == Availability::Pattern::Split;
    const int seeds = std::min(preset.sweep.seeds, slot_model ? kInvariantSeedsSlotModel : kInvariantSeeds);
    for (const auto& cell : cells_of(preset)) {
      for (int s = 0; s < seeds; ++s) {
        const auto& run = runner.get(preset, cell, preset.scenario.seed + static_cast<std::uint64_t>(s));
        ++runs;
        if (!run.ok()) {
          ++errors;
          if (first.empty()) first = name + ": " + run.error;
          continue;
        }
        const auto report = verify_offer(run.result.offer, run.instance);
        violations += static_cast<int>(report.entries.size());
        if (!report.clean() && first.empty()) first = name + ": " + report.summary();
      }
    }
  }
  std::ostringstream d;
  d << runs << " runs over " << preset_names().size() << " presets, " << violations << " violations, " << errors
    << " unsolved";
  if (!first.empty()) d << "; first: " << first;
  return {violations == 0 && errors == 0, d.str()};
}

// Mean profit per (rate, gamma) on the baseline preset.
Verdict gamma_monotonicity(Runner& runner) {
  const auto preset = find_preset("baseline-single-rate");
  std::ostringstream d;
  bool pass = true;
  for (const auto& rates : preset.sweep.rate_configs) {
    d << rates[0].rate_kw << " kW";
    double previous = 1e300;
    for (double gamma : preset.sweep.gammas) {
      double sum = 0.0;
      for (int s = 0; s < preset.sweep.seeds; ++s) {
        const auto& run = runner.get(preset, {gamma, rates, preset.scenario.bid_range}, preset.scenario.seed + s);
        if (!run.ok()) return {false, "run failed: " + run.error};
        sum += run.result.metrics.operator_profit;
      }
      const double mean = sum / preset.sweep.seeds;
      if (mean > previous + 1e-6) pass = false;
      previous = mean;
      d << ' ' << fmt("%.2f", mean);
    }
    d << "; ";
  }
  d << "mean profit at gamma 0.2..0.8 over " << preset.sweep.seeds << " seeds";
  return {pass, d.str()};
}

// Markup must vanish in every run whose share row leaves no room for a
// countered slot, i.e. floor((1 - gamma) * assigned slots) = 0.
Verdict high_rate_collapse(Runner& runner) {
  const auto preset = find_preset("baseline-single-rate");
  const std::vector<RateLevel> rates = {standard_rate(100.0, preset.scenario.station.num_slots)};
  const double gamma = 0.8;
  std::vector<SeedMetrics> seeds;
  int locked = 0, locked_with_markup = 0, countered = 0;
  for (int s = 0; s < 50; ++s) {
    const auto& run = runner.get(preset, {gamma, rates, preset.scenario.bid_range}, preset.scenario.seed + s);
    if (!run.ok()) return {false, "run failed: " + run.error};
    seeds.push_back({preset.scenario.seed + static_cast<std::uint64_t>(s), run.result.metrics});
    int assigned = 0, run_countered = 0;
    for (const auto& u : run.result.offer.users) {
      assigned += static_cast<int>(u.slots.size());
      run_countered += u.countered_slots();
    }
    countered += run_countered;
    if (std::floor((1.0 - gamma) * assigned + 1e-9) >= 1.0) continue;
    ++locked;
    const auto markup = run.result.metrics.mean_markup;
    if (run_countered > 0 || (markup && std::abs(*markup) > 1e-9)) ++locked_with_markup;
  }
  const auto agg = aggregate(seeds);
  std::ostringstream d;
  d << "acceptance " << fmt("%.3f", agg.acceptance->mean) << " +- " << fmt("%.3f", agg.acceptance->std)
    << " over 50 seeds; " << locked << " runs with countering ruled out by the share row, " << locked_with_markup
    << " of them with markup; overall mean markup " << fmt("%.4f", agg.markup ? agg.markup->mean : 0.0) << " ("
    << countered << " countered slots in the other " << 50 - locked << " runs)";
  return {agg.acceptance->mean <= 0.2 && locked_with_markup == 0, d.str()};
}

Verdict price_cap(Runner& runner) {
  const auto preset = find_preset("baseline-single-rate");
  int over_cap = 0, at_bid = 0, above_cap = 0, countered = 0, rejected = 0, runs = 0;
  double highest = 0.0;
  for (const auto& rates : preset.sweep.rate_configs) {
    for (double gamma : preset.sweep.gammas) {
      for (int s = 0; s < 50; ++s) {
        const auto& run = runner.get(preset, {gamma, rates, preset.scenario.bid_range}, preset.scenario.seed + s);
        if (!run.ok()) return {false, "run failed: " + run.error};
        ++runs;
        const auto& inst = run.instance;
        for (std::size_t i = 0; i < inst.bids.size(); ++i) {
          const auto& user = run.result.offer.users[i];
          const double cap = inst.policy.alpha * inst.station.rates[0].cost(0);
          if (inst.bids[i].bid_price <= cap + 1e-9) continue;
          ++over_cap;
          if (!user.accepted) {
            ++rejected;
            continue;
          }
          for (const auto& slot : user.slots) {
            highest = std::max(highest, slot.final_price);
            if (slot.at_bid) ++at_bid;
            if (slot.final_price > cap + 1e-6) ++above_cap;
          }
          ++countered;
        }
      }
    }
  }
  std::ostringstream d;
  d << runs << " runs, " << over_cap << " bids above the cap: " << countered << " countered down (highest price "
    << fmt("%.4f", highest) << "), " << rejected << " rejected, " << at_bid << " slots at bid, " << above_cap << " slots above the cap";
  return {at_bid == 0 && above_cap == 0 && over_cap > 0, d.str()};
}

// The preset's own seeded scenario at every gamma on its axis.
Verdict mixed_inclusiveness(Runner& runner) {
  const auto preset = find_preset("mixed-22-50");
  std::ostringstream d;
  bool pass = true;
  double slowest = 0.0;
  for (const auto& cell : cells_of(preset)) {
    const auto& run = runner.get(preset, cell, preset.scenario.seed);
    if (!run.ok()) return {false, "run failed: " + run.error};
    const auto& m = run.result.metrics;
    if (m.acceptance_rate < 1.0) pass = false;
    slowest = std::max(slowest, run.wall_seconds);
    d << "gamma " << cell.gamma << ' ' << m.accepted_users << '/' << m.user_count << "; ";
  }
  d << "seed " << preset.scenario.seed << ", slowest run " << fmt("%.1f", slowest) << " s";
  return {pass, d.str()};
}

Verdict utility_consistency(Runner& runner) {
  const auto preset = find_preset("utility-response");
  int zero_markup = 0, zero_declined = 0, declined = 0, declined_without_markup = 0, decisions = 0;
  for (int s = 0; s < 50; ++s) {
    const auto& run = runner.get(preset, cells_of(preset).front(), preset.scenario.seed + s);
    if (!run.ok()) return {false, "run failed: " + run.error};
    const auto& offer = run.result.offer;
    for (const auto& dec : run.result.decisions) {
      const auto i = static_cast<std::size_t>(dec.user_id - 1);
      const double paid = markup_payment(offer.users[i], run.instance.bids[i]);
      ++decisions;
      if (paid <= 1e-9) {
        ++zero_markup;
        if (!dec.accepted) ++zero_declined;
      }
      if (!dec.accepted) {
        ++declined;
        if (paid <= 1e-9) ++declined_without_markup;
      }
    }
  }
  std::ostringstream d;
  d << decisions << " decisions over 50 seeds: " << zero_markup << " without markup (" << zero_declined
    << " declined), " << declined << " declined (" << declined_without_markup << " without positive markup)";
  return {zero_declined == 0 && declined_without_markup == 0 && decisions > 0, d.str()};
}

Verdict scale_and_uplift(Runner& runner) {
  const auto preset = find_preset("large-scale");
  std::ostringstream d;
  bool pass = true;
  double slowest = 0.0;
  for (const auto& cell : cells_of(preset)) {
    const auto& run = runner.get(preset, cell, preset.scenario.seed);
    if (!run.ok()) return {false, "run failed: " + run.error};
    slowest = std::max(slowest, run.wall_seconds);
    if (run.wall_seconds > 60.0) pass = false;
  }
  d << cells_of(preset).size() << " sweep cells solved to optimality, slowest " << fmt("%.2f", slowest) << " s";

  const auto& run = runner.get(preset, {0.8, preset.scenario.station.rates, {2.0, 4.0}}, preset.scenario.seed);
  int adjusted = 0, off_rate = 0, off_step = 0;
  const auto& inst = run.instance;
  for (std::size_t i = 0; i < inst.bids.size(); ++i) {
    const auto& user = run.result.offer.users[i];
    if (!user.accepted) continue;
    const auto& rate = inst.station.rates[static_cast<std::size_t>(*user.rate_index)];
    for (const auto& slot : user.slots) {
      const double step = slot.final_price - inst.bids[i].bid_price;
      if (std::abs(step) <= 1e-6) continue;
      ++adjusted;
      if (rate.rate_kw != 100.0) ++off_rate;
      if (std::abs(step - rate.max_markup) > 1e-6) ++off_step;
    }
  }
  d << "; gamma 0.8 bids [2, 4]: " << run.result.metrics.accepted_users << '/' << inst.num_users() << " accepted, "
    << adjusted << " adjusted slots, " << off_rate << " off 100 kW, " << off_step << " not exactly +delta";
  return {pass && off_rate == 0 && off_step == 0 && adjusted > 0, d.str()};
}

Verdict metrics_correctness() {
  const std::vector<double> known = {1.0, 2.0, 3.0};
  const double g = *gini(known);
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> value(0.0, 10.0), factor(0.01, 100.0);
  int bad_scale = 0, bad_perm = 0, bad_pairwise = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> v(static_cast<std::size_t>(1 + k % 50));
    for (auto& x : v) x = value(gen);
    const double base = *gini(v);
    auto scaled = v;
    const double c = factor(gen);
    for (auto& x : scaled) x *= c;
    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    if (std::abs(*gini(scaled) - base) > 1e-9) ++bad_scale;
    if (std::abs(*gini(shuffled) - base) > 1e-12) ++bad_perm;
    if (std::abs(testing::pairwise_gini(v) - base) > 1e-9) ++bad_pairwise;
  }
  int bad_aggregate = 0;
  std::normal_distribution<double> noise(300.0, 80.0);
  for (int k = 0; k < 100; ++k) {
    std::vector<SeedMetrics> runs;
    std::vector<double> profits, prices;
    for (int s = 0; s < 1 + k % 60; ++s) {
      SeedMetrics m;
      m.seed = static_cast<std::uint64_t>(s);
      m.metrics.operator_profit = noise(gen);
      m.metrics.mean_final_price = noise(gen) / 100.0;
      profits.push_back(m.metrics.operator_profit);
      prices.push_back(*m.metrics.mean_final_price);
      runs.push_back(m);
    }
    const auto agg = aggregate(runs);
    const auto p = testing::two_pass(profits);
    const auto q = testing::two_pass(prices);
    if (std::abs(agg.profit->mean - p.mean) > 1e-9 || std::abs(agg.profit->std - p.std) > 1e-9 ||
        std::abs(agg.final_price->mean - q.mean) > 1e-9 || std::abs(agg.final_price->std - q.std) > 1e-9) {
      ++bad_aggregate;
    }
  }
  std::ostringstream d;
  d << "gini([1,2,3]) = " << fmt("%.6f", g) << "; 1000 vectors: " << bad_scale << " scale, " << bad_perm
    << " permutation, " << bad_pairwise << " pairwise mismatches; 100 aggregations: " << bad_aggregate
    << " off the two-pass result";
  const bool pass = std::abs(g - 0.2222) <= 1e-4 && bad_scale + bad_perm + bad_pairwise + bad_aggregate == 0;
  return {pass, d.str()};
}

}  // namespace

int main() {
  Runner runner;
  report("C1", "oracle equivalence", oracle_equivalence);
  report("C2", "constraint invariants", [&] { return invariant_suite(runner); });
  report("C3", "profit non-increasing in gamma", [&] { return gamma_monotonicity(runner); });
  report("C4", "100 kW collapse at gamma 0.8", [&] { return high_rate_collapse(runner); });
  report("C5", "bids above the price cap", [&] { return price_cap(runner); });
  report("C6", "mixed 22/50 kW serves everyone", [&] { return mixed_inclusiveness(runner); });
  report("C7", "utility response", [&] { return utility_consistency(runner); });
  report("C8", "large-scale runtime and uplift", [&] { return scale_and_uplift(runner); });
  report("C9", "metrics", metrics_correctness);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
