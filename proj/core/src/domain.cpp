#include "evmarket/domain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "evmarket/errors.hpp"

namespace evmarket {

bool UserBid::accepts(int slot) const {
  return std::binary_search(acceptable_slots.begin(), acceptable_slots.end(), slot);
}

double RateLevel::max_cost() const {
  if (cost_per_kwh.empty()) return 0.0;
  return *std::max_element(cost_per_kwh.begin(), cost_per_kwh.end());
}

double StationConfig::energy_per_slot(int rate_index) const {
  return evmarket::energy_per_slot(rates.at(static_cast<std::size_t>(rate_index)), slot_minutes);
}

double energy_per_slot(const RateLevel& rate, double slot_minutes) {
  return rate.rate_kw * slot_minutes / 60.0;
}

double minimum_price_big_m(const std::vector<UserBid>& bids, const StationConfig& station,
                           double alpha) {
  double max_markup = 0.0;
  double max_cost = 0.0;
  for (const auto& rate : station.rates) {
    max_markup = std::max(max_markup, rate.max_markup);
    max_cost = std::max(max_cost, rate.max_cost());
  }
  double bound = alpha * max_cost;
  for (const auto& bid : bids) bound = std::max(bound, bid.bid_price + max_markup);
  return bound;
}

double default_price_big_m(const std::vector<UserBid>& bids, const StationConfig& station,
                           double alpha) {
  return minimum_price_big_m(bids, station, alpha) + 1.0;
}

RateLevel make_rate(double rate_kw, double cost_per_kwh, double max_markup, int charger_count,
                    int num_slots) {
  RateLevel rate;
  rate.rate_kw = rate_kw;
  rate.cost_per_kwh.assign(static_cast<std::size_t>(std::max(num_slots, 0)), cost_per_kwh);
  rate.max_markup = max_markup;
  rate.charger_count = charger_count;
  return rate;
}

std::string ValidationResult::summary() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    const auto& v = violations[k];
    if (k > 0) out << "; ";
    out << v.field << ": " << v.message;
    if (v.user_id) out << " for user " << *v.user_id;
  }
  return out.str();
}

namespace {

class Collector {
 public:
  void add(std::string field, std::string message, std::optional<int> user = std::nullopt) {
    result_.violations.push_back({std::move(field), user, std::move(message)});
  }
  ValidationResult take() { return std::move(result_); }

 private:
  ValidationResult result_;
};

void check_station(const StationConfig& station, Collector& out) {
  if (station.num_slots < 1) out.add("station.num_slots", "horizon must contain at least one slot");
  if (!(station.slot_minutes > 0.0)) out.add("station.slot_minutes", "slot length must be positive");
  if (station.slot_capacity.size() != static_cast<std::size_t>(std::max(station.num_slots, 0))) {
    out.add("station.slot_capacity", "one capacity entry per slot required");
  }
  for (double c : station.slot_capacity) {
    if (!(c >= 0.0)) {
      out.add("station.slot_capacity", "capacity must be non-negative");
      break;
    }
  }
  if (station.rates.empty()) out.add("station.rates", "at least one rate level required");
  for (std::size_t r = 0; r < station.rates.size(); ++r) {
    const auto& rate = station.rates[r];
    const std::string field = "station.rates[" + std::to_string(r) + "]";
    if (!(rate.rate_kw > 0.0)) out.add(field + ".rate_kw", "rate must be positive");
    if (rate.charger_count < 0) out.add(field + ".charger_count", "charger count must be non-negative");
    if (!(rate.max_markup >= 0.0)) out.add(field + ".max_markup", "markup cap must be non-negative");
    if (rate.cost_per_kwh.size() != static_cast<std::size_t>(std::max(station.num_slots, 0))) {
      out.add(field + ".cost_per_kwh", "one cost entry per slot required");
    }
    if (std::any_of(rate.cost_per_kwh.begin(), rate.cost_per_kwh.end(),
                    [](double c) { return !(c > 0.0); })) {
      out.add(field + ".cost_per_kwh", "costs must be positive");
    }
  }
}

void check_policy(const ProblemInstance& instance, Collector& out) {
  const auto& policy = instance.policy;
  if (!(policy.gamma >= 0.0 && policy.gamma <= 1.0)) out.add("policy.gamma", "gamma must lie in [0, 1]");
  if (!(policy.epsilon >= 0.0)) out.add("policy.epsilon", "epsilon must be non-negative");
  if (!(policy.alpha >= 1.0 + policy.epsilon)) out.add("policy.alpha", "alpha must be at least 1 + epsilon");
  const double needed = minimum_price_big_m(instance.bids, instance.station, policy.alpha);
  if (!(policy.price_big_m >= needed)) {
    out.add("policy.price_big_m",
            "big-M below max(bid + markup cap, alpha * cost) = " + std::to_string(needed));
  }
}

void check_bids(const ProblemInstance& instance, Collector& out) {
  std::set<int> seen;
  for (const auto& bid : instance.bids) {
    if (!seen.insert(bid.user_id).second) out.add("bids.user_id", "duplicate user id", bid.user_id);
    if (!(bid.bid_price > 0.0)) out.add("bids.bid_price", "bid price must be positive", bid.user_id);
    if (!(bid.q_min >= 0.0)) out.add("bids.q_min", "q_min must be non-negative", bid.user_id);
    if (bid.q_min > bid.q_max) out.add("bids.q_min", "q_min > q_max", bid.user_id);
    if (!std::is_sorted(bid.acceptable_slots.begin(), bid.acceptable_slots.end()) ||
        std::adjacent_find(bid.acceptable_slots.begin(), bid.acceptable_slots.end()) !=
            bid.acceptable_slots.end()) {
      out.add("bids.acceptable_slots", "slots must be sorted and unique", bid.user_id);
    }
    for (int t : bid.acceptable_slots) {
      if (t < 0 || t >= instance.station.num_slots) {
        out.add("bids.acceptable_slots", "slot out of horizon", bid.user_id);
        break;
      }
    }
  }
}

}  // namespace

ValidationResult validate_instance(const ProblemInstance& instance) {
  Collector out;
  check_station(instance.station, out);
  check_policy(instance, out);
  check_bids(instance, out);
  return out.take();
}

void require_valid(const ProblemInstance& instance) {
  auto result = validate_instance(instance);
  if (!result.ok()) throw InvalidInstance("invalid instance: " + result.summary());
}

}  // namespace evmarket
