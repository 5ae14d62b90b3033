#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "evmarket/domain.hpp"

namespace evmarket::testing {

// One user, two slots, one 22 kW charger (c = 1.5, E = 5.5), bid 3.0,
// Q in [5, 6], delta 2, alpha 2.5, epsilon 0.5.
inline ProblemInstance tiny_a(double gamma = 0.0, double bid = 3.0) {
  ProblemInstance inst;
  inst.station.num_slots = 2;
  inst.station.slot_minutes = 15.0;
  inst.station.rates = {make_rate(22.0, 1.5, 2.0, 1, 2)};
  inst.station.slot_capacity = {5.5, 5.5};
  inst.bids = {UserBid{1, bid, 5.0, 6.0, {0, 1}}};
  inst.policy.gamma = gamma;
  inst.policy.alpha = 2.5;
  inst.policy.epsilon = 0.5;
  inst.policy.price_big_m = default_price_big_m(inst.bids, inst.station, inst.policy.alpha);
  return inst;
}

inline ProblemInstance tiny_b() { return tiny_a(1.0, 4.0); }

// Two users, four slots, one rate; used for counting and verifier cases.
inline ProblemInstance two_by_four(double gamma = 0.0) {
  ProblemInstance inst;
  inst.station.num_slots = 4;
  inst.station.rates = {make_rate(22.0, 1.5, 2.0, 1, 4)};
  inst.station.slot_capacity.assign(4, 5.5);
  inst.bids = {UserBid{1, 3.0, 5.0, 22.0, {0, 1, 2, 3}}, UserBid{2, 3.5, 5.0, 22.0, {0, 1, 2, 3}}};
  inst.policy.gamma = gamma;
  inst.policy.price_big_m = default_price_big_m(inst.bids, inst.station, inst.policy.alpha);
  return inst;
}

struct TinyShape {
  int max_users = 2;
  int max_slots = 4;
  int max_rates = 2;
};

// Random instance within the oracle's enumeration budget.
inline ProblemInstance random_tiny(std::mt19937_64& gen, double gamma, TinyShape shape = {}) {
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  auto cents = [](double v) { return std::round(v * 100.0) / 100.0; };

  ProblemInstance inst;
  const int users = pick(1, shape.max_users);
  const int slots = pick(1, shape.max_slots);
  const int rates = pick(1, shape.max_rates);
  inst.station.num_slots = slots;
  inst.station.slot_minutes = 15.0;

  std::vector<double> kw = {22.0, 50.0, 100.0};
  std::shuffle(kw.begin(), kw.end(), gen);
  kw.resize(static_cast<std::size_t>(rates));
  std::sort(kw.begin(), kw.end());
  double full_capacity = 0.0;
  for (double r : kw) {
    RateLevel rate;
    rate.rate_kw = r;
    const double base = r == 22.0 ? 1.5 : (r == 50.0 ? 2.0 : 2.5);
    const bool varying = pick(0, 2) == 0;
    for (int t = 0; t < slots; ++t) rate.cost_per_kwh.push_back(varying ? cents(uniform(1.0, 2.5)) : base);
    rate.max_markup = cents(uniform(0.0, 2.5));
    rate.charger_count = pick(1, 2);
    full_capacity += rate.charger_count * energy_per_slot(rate, 15.0);
    inst.station.rates.push_back(std::move(rate));
  }
  const bool tight = pick(0, 2) == 0;
  for (int t = 0; t < slots; ++t) {
    inst.station.slot_capacity.push_back(tight ? cents(uniform(0.0, full_capacity)) : full_capacity);
  }

  const double q_mins[] = {0.0, 5.0, 10.0, 20.0};
  const double q_spans[] = {0.0, 10.0, 30.0, 100.0};
  for (int i = 0; i < users; ++i) {
    UserBid bid;
    bid.user_id = i + 1;
    bid.bid_price = cents(uniform(1.0, 6.0));
    bid.q_min = q_mins[pick(0, 3)];
    bid.q_max = bid.q_min + q_spans[pick(0, 3)];
    for (int t = 0; t < slots; ++t) {
      if (uniform(0.0, 1.0) < 0.75) bid.acceptable_slots.push_back(t);
    }
    inst.bids.push_back(std::move(bid));
  }

  inst.policy.gamma = gamma;
  const double alphas[] = {2.0, 2.5, 3.0};
  const double epsilons[] = {0.2, 0.5};
  inst.policy.alpha = alphas[pick(0, 2)];
  inst.policy.epsilon = epsilons[pick(0, 1)];
  inst.policy.price_big_m = default_price_big_m(inst.bids, inst.station, inst.policy.alpha);
  return inst;
}

// Direct pairwise definition of the Gini coefficient.
inline double pairwise_gini(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (mean == 0.0) return 0.0;
  double sum = 0.0;
  for (double a : v) {
    for (double b : v) sum += std::fabs(a - b);
  }
  return sum / (2.0 * n * n * mean);
}

struct TwoPass {
  double mean = 0.0;
  double std = 0.0;
};

// Mean first, then the population variance about it.
inline TwoPass two_pass(const std::vector<double>& v) {
  TwoPass out;
  out.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(v.size()));
  return out;
}

}  // namespace evmarket::testing
