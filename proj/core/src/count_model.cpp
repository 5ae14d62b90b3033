#include "evmarket/count_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evmarket/errors.hpp"

namespace evmarket {

namespace {

std::string option_name(const CountOption& o) {
  return "o_" + std::to_string(o.user) + '_' + std::to_string(o.rate) + '_' + std::to_string(o.slots) + '_' +
         std::to_string(o.at_bid);
}

// Price of a countered slot; below the floor means countering is impossible.
double counter_price(const UserBid& bid, const RateLevel& rate, double cost, const PricingPolicy& policy) {
  return std::min(bid.bid_price + rate.max_markup, policy.alpha * cost);
}

bool at_bid_allowed(const UserBid& bid, double cost, const PricingPolicy& policy) {
  return bid.bid_price >= (1.0 + policy.epsilon) * cost && bid.bid_price <= policy.alpha * cost;
}

}  // namespace

std::optional<CountModel> build_count_model(const ProblemInstance& instance) {
  require_valid(instance);
  const auto& station = instance.station;
  const auto& policy = instance.policy;

  const std::vector<int>* shared = nullptr;
  for (const auto& bid : instance.bids) {
    if (bid.acceptable_slots.empty()) continue;
    if (shared && *shared != bid.acceptable_slots) return std::nullopt;
    shared = &bid.acceptable_slots;
  }
  CountModel counts;
  if (shared) {
    counts.first_slot = shared->front();
    counts.run_length = shared->back() - shared->front() + 1;
    if (counts.run_length != static_cast<int>(shared->size())) return std::nullopt;
  }
  const int first = counts.first_slot, length = counts.run_length;

  double all_chargers = 0.0;
  for (int r = 0; r < station.num_rates(); ++r) {
    const auto& rate = station.rates[static_cast<std::size_t>(r)];
    if (rate.charger_count > 1) return std::nullopt;
    all_chargers += rate.charger_count * station.energy_per_slot(r);
    for (int t = first; t < first + length; ++t) {
      if (rate.cost(t) != rate.cost(first)) return std::nullopt;
    }
  }
  for (int t = first; t < first + length; ++t) {
    if (station.slot_capacity[static_cast<std::size_t>(t)] < all_chargers) return std::nullopt;
  }

  auto& model = counts.model;
  std::vector<std::vector<Term>> charger_use(static_cast<std::size_t>(station.num_rates()));
  std::vector<Term> share, countered, allowed;
  for (int i = 0; i < instance.num_users(); ++i) {
    const auto& bid = instance.bids[static_cast<std::size_t>(i)];
    if (bid.acceptable_slots.empty()) continue;
    std::vector<Term> pick;
    for (int r = 0; r < station.num_rates(); ++r) {
      const auto& rate = station.rates[static_cast<std::size_t>(r)];
      if (rate.charger_count < 1) continue;
      const double energy = station.energy_per_slot(r);
      const double cost = rate.cost(first);
      const double counter = counter_price(bid, rate, cost, policy);
      const bool can_counter = counter >= (1.0 + policy.epsilon) * cost;
      const bool can_bid = at_bid_allowed(bid, cost, policy);
      const int fewest = std::max(1, static_cast<int>(std::ceil(bid.q_min / energy - 1e-9)));
      const int most = std::min(length, static_cast<int>(std::floor(bid.q_max / energy + 1e-9)));
      for (int n = fewest; n <= most; ++n) {
        for (int k = can_counter ? 0 : n; k <= (can_bid ? n : 0); ++k) {
          const CountOption option{i, r, n, k};
          const int var = static_cast<int>(model.variables.size());
          model.variables.push_back({option_name(option), VarKind::Binary, 0.0, 1.0});
          counts.options.push_back(option);
          model.objective.push_back({var, energy * (k * (bid.bid_price - cost) + (n - k) * (counter - cost))});
          pick.push_back({var, 1.0});
          charger_use[static_cast<std::size_t>(r)].push_back({var, static_cast<double>(n)});
          share.push_back({var, k - policy.gamma * n});
          if (n > k) countered.push_back({var, static_cast<double>(n - k)});
          allowed.push_back({var, -(1.0 - policy.gamma) * n});
        }
      }
    }
    if (!pick.empty()) {
      model.constraints.push_back({"pick_" + std::to_string(i), ConstraintTag::AcceptRate, std::move(pick),
                                   Sense::LessEqual, 1.0});
    }
  }
  for (int r = 0; r < station.num_rates(); ++r) {
    auto& use = charger_use[static_cast<std::size_t>(r)];
    if (use.empty()) continue;
    model.constraints.push_back({"chargers_" + std::to_string(r), ConstraintTag::ChargerCount, std::move(use),
                                 Sense::LessEqual, static_cast<double>(length)});
  }
  const int budget = static_cast<int>(model.variables.size());
  model.variables.push_back({"nN", VarKind::Integer, 0.0, static_cast<double>(length * station.num_rates())});
  countered.push_back({budget, -1.0});
  allowed.push_back({budget, 1.0});
  model.constraints.push_back({"eq18", ConstraintTag::BidShare, std::move(share), Sense::GreaterEqual, 0.0});
  model.constraints.push_back({"counter_budget", ConstraintTag::Aux, std::move(countered), Sense::LessEqual, 0.0});
  model.constraints.push_back({"counter_share", ConstraintTag::Aux, std::move(allowed), Sense::LessEqual, 0.0});
  return counts;
}

std::vector<double> expand_count_solution(const CountModel& counts, const std::vector<double>& values,
                                          const ProblemInstance& instance, const ModelDescription& full) {
  if (values.size() != counts.model.variables.size()) {
    throw SolverError("count solution has " + std::to_string(values.size()) + " values, expected " +
                      std::to_string(counts.model.variables.size()));
  }
  const auto& L = full.layout;
  const auto& station = instance.station;
  const auto& policy = instance.policy;
  std::vector<double> out(full.variables.size(), 0.0);
  std::vector<int> next_free(static_cast<std::size_t>(station.num_rates()), counts.first_slot);
  // Options are stored user-major, so each rate's users come out in index order.
  for (std::size_t k = 0; k < counts.options.size(); ++k) {
    if (values[k] < 0.5) continue;
    const auto& o = counts.options[k];
    const auto& bid = instance.bids[static_cast<std::size_t>(o.user)];
    const auto& rate = station.rates[static_cast<std::size_t>(o.rate)];
    const double energy = station.energy_per_slot(o.rate);
    const int start = next_free[static_cast<std::size_t>(o.rate)];
    next_free[static_cast<std::size_t>(o.rate)] += o.slots;
    out[static_cast<std::size_t>(L.a(o.user))] = 1.0;
    out[static_cast<std::size_t>(L.y(o.user, o.rate))] = 1.0;
    out[static_cast<std::size_t>(L.z_start(o.user, start))] = 1.0;
    out[static_cast<std::size_t>(L.z_end(o.user, start + o.slots - 1))] = 1.0;
    for (int t = start; t < start + o.slots; ++t) {
      const bool at_bid = t - start < o.at_bid;
      const double counter = counter_price(bid, rate, rate.cost(t), policy);
      out[static_cast<std::size_t>(L.z(o.user, t, o.rate))] = 1.0;
      out[static_cast<std::size_t>(L.q(o.user, t))] = energy;
      if (at_bid) {
        out[static_cast<std::size_t>(L.x_bid(o.user, t, o.rate))] = 1.0;
        out[static_cast<std::size_t>(L.p_final(o.user, t, o.rate))] = bid.bid_price;
        out[static_cast<std::size_t>(L.p_ref(t, o.rate))] = bid.bid_price;
      } else {
        out[static_cast<std::size_t>(L.x_counter(o.user, t, o.rate))] = 1.0;
        out[static_cast<std::size_t>(L.p_counter(o.user, t, o.rate))] = counter;
        out[static_cast<std::size_t>(L.p_final(o.user, t, o.rate))] = counter;
      }
    }
  }
  for (int r = 0; r < station.num_rates(); ++r) {
    if (next_free[static_cast<std::size_t>(r)] > counts.first_slot + counts.run_length) {
      throw SolverError("count solution overfills rate " + std::to_string(r));
    }
  }
  return out;
}

}  // namespace evmarket
