#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evmarket/domain.hpp"
#include "evmarket/offer.hpp"
#include "evmarket/user_response.hpp"

namespace evmarket {

// Population over which price means and the Gini coefficient are taken.
enum class PriceAveraging {
  Slots,  // every assigned slot of an accepted user counts once
  Users,  // each accepted user contributes the mean over their slots
};

struct ScenarioMetrics {
  int user_count = 0;
  int accepted_users = 0;
  double operator_profit = 0.0;
  double acceptance_rate = 0.0;
  // Absent when no user is accepted.
  std::optional<double> mean_final_price;
  std::optional<double> mean_markup;
  std::optional<double> gini;
  // Absent without decisions or without accepted users.
  std::optional<double> post_response_acceptance;
};

// Mean absolute pairwise difference over twice the mean, i.e.
// sum_ij |v_i - v_j| / (2 n^2 mean); 0 when the mean is 0, absent when empty.
std::optional<double> gini(std::span<const double> values);

ScenarioMetrics compute_metrics(const OperatorOffer& offer, const ProblemInstance& instance,
                                std::optional<std::span<const AcceptanceDecision>> decisions = std::nullopt,
                                PriceAveraging averaging = PriceAveraging::Slots);

struct Statistic {
  double mean = 0.0;
  double std = 0.0;  // population convention
  int count = 0;
};

struct AggregateMetrics {
  int seed_count = 0;
  std::optional<Statistic> profit;
  std::optional<Statistic> acceptance;
  std::optional<Statistic> final_price;
  std::optional<Statistic> markup;
  std::optional<Statistic> gini;
  std::optional<Statistic> post_response_acceptance;
};

struct SeedMetrics {
  std::uint64_t seed = 0;
  ScenarioMetrics metrics;
};

// Mean and population std per indicator, reduced in seed order. Absent values
// are skipped and the effective count is kept per indicator.
AggregateMetrics aggregate(std::span<const SeedMetrics> runs);

}  // namespace evmarket
