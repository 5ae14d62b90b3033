#include "evmarket/offer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "evmarket/errors.hpp"

namespace evmarket {

int UserOffer::at_bid_slots() const {
  return static_cast<int>(std::count_if(slots.begin(), slots.end(), [](const SlotOffer& s) { return s.at_bid; }));
}

int UserOffer::countered_slots() const { return static_cast<int>(slots.size()) - at_bid_slots(); }

double UserOffer::total_energy() const {
  double total = 0.0;
  for (const auto& s : slots) total += s.energy_kwh;
  return total;
}

double offer_profit(const OperatorOffer& offer, const ProblemInstance& instance) {
  double profit = 0.0;
  for (const auto& user : offer.users) {
    if (!user.accepted || !user.rate_index) continue;
    const auto& rate = instance.station.rates.at(static_cast<std::size_t>(*user.rate_index));
    const double energy = energy_per_slot(rate, instance.station.slot_minutes);
    for (const auto& s : user.slots) profit += energy * (s.final_price - rate.cost(s.slot));
  }
  return profit;
}

bool ViolationReport::has_tag(std::string_view tag) const {
  return std::any_of(entries.begin(), entries.end(), [tag](const ViolationEntry& e) { return e.tag == tag; });
}

std::string ViolationReport::summary() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << '[' << e.tag << ']';
    if (e.user_id) out << " user=" << *e.user_id;
    if (e.slot) out << " slot=" << *e.slot;
    if (e.rate) out << " rate=" << *e.rate;
    out << " measured=" << e.measured << " bound=" << e.bound << ": " << e.message << '\n';
  }
  return out.str();
}

OperatorOffer extract_offer(const ModelDescription& model, const Solution& solution,
                            const ProblemInstance& instance, double integrality_tolerance) {
  const auto& L = model.layout;
  if (L.num_users() != instance.num_users() || L.num_slots() != instance.num_slots() ||
      L.num_rates() != instance.num_rates()) {
    throw InvalidInstance("model dimensions do not match the instance");
  }
  if (!solution.has_incumbent() || solution.values.size() != model.variables.size()) {
    throw SolverError("solution carries no assignment for this model");
  }
  const auto& x = solution.values;
  auto binary = [&](int index) {
    const double v = x[static_cast<std::size_t>(index)];
    const double rounded = v >= 0.5 ? 1.0 : 0.0;
    if (std::abs(v - rounded) > integrality_tolerance) {
      throw NonIntegralSolution("non-integral solution: " + model.variables[static_cast<std::size_t>(index)].name +
                                " = " + std::to_string(v));
    }
    return rounded == 1.0;
  };
  for (int k = 0; k < static_cast<int>(model.variables.size()); ++k) {
    if (model.variables[static_cast<std::size_t>(k)].kind == VarKind::Binary) binary(k);
  }

  OperatorOffer offer;
  offer.num_rates = L.num_rates();
  offer.objective = solution.objective;
  for (int i = 0; i < L.num_users(); ++i) {
    const auto& bid = instance.bids[static_cast<std::size_t>(i)];
    UserOffer user;
    user.user_id = bid.user_id;
    user.accepted = binary(L.a(i));
    for (int r = 0; r < L.num_rates(); ++r) {
      if (binary(L.y(i, r))) user.rate_index = r;
    }
    for (int t = 0; t < L.num_slots(); ++t) {
      for (int r = 0; r < L.num_rates(); ++r) {
        if (!binary(L.z(i, t, r))) continue;
        if (!user.rate_index || *user.rate_index != r) {
          throw SolverError("slot assigned at a rate the user does not hold");
        }
        SlotOffer slot;
        slot.slot = t;
        slot.at_bid = binary(L.x_bid(i, t, r));
        slot.energy_kwh = instance.station.energy_per_slot(r);
        if (slot.at_bid) {
          slot.final_price = bid.bid_price;
        } else {
          slot.counter_price = x[static_cast<std::size_t>(L.p_counter(i, t, r))];
          slot.final_price = slot.counter_price;
        }
        user.slots.push_back(slot);
      }
    }
    offer.users.push_back(std::move(user));
  }
  for (int t = 0; t < L.num_slots(); ++t) {
    for (int r = 0; r < L.num_rates(); ++r) {
      offer.reference_prices.push_back(x[static_cast<std::size_t>(L.p_ref(t, r))]);
    }
  }
  return offer;
}

namespace {

class Verifier {
 public:
  Verifier(const OperatorOffer& offer, const ProblemInstance& instance)
      : offer_(offer), in_(instance), T_(instance.num_slots()), R_(instance.num_rates()) {}

  ViolationReport run() && {
    if (auto validation = validate_instance(in_); !validation.ok()) {
      flag("aux", {}, {}, {}, 0, 0, "instance is invalid: " + validation.summary());
      return std::move(report_);
    }
    if (offer_.users.size() != in_.bids.size()) {
      flag("aux", {}, {}, {}, static_cast<double>(offer_.users.size()),
           static_cast<double>(in_.bids.size()), "offer and instance user counts differ");
      return std::move(report_);
    }
    check_reference_layout();
    usage_.assign(static_cast<std::size_t>(T_ * R_), 0);
    load_.assign(static_cast<std::size_t>(T_), 0.0);
    floor_.assign(static_cast<std::size_t>(T_ * R_), 0.0);
    for (std::size_t i = 0; i < offer_.users.size(); ++i) check_user(offer_.users[i], in_.bids[i]);
    check_shared_resources();
    check_reference_prices();
    check_bid_share();
    return std::move(report_);
  }

 private:
  void flag(std::string tag, std::optional<int> user, std::optional<int> slot, std::optional<int> rate,
            double measured, double bound, std::string message) {
    report_.entries.push_back({std::move(tag), user, slot, rate, measured, bound, std::move(message)});
  }

  bool in_horizon(int t) const { return t >= 0 && t < T_; }
  std::size_t cell(int t, int r) const { return static_cast<std::size_t>(t * R_ + r); }

  void check_reference_layout() {
    has_reference_ = !offer_.reference_prices.empty();
    if (has_reference_ && offer_.reference_prices.size() != static_cast<std::size_t>(T_ * R_)) {
      flag("aux", {}, {}, {}, static_cast<double>(offer_.reference_prices.size()), T_ * R_,
           "reference price table has the wrong size");
      has_reference_ = false;
    }
  }

  void check_user(const UserOffer& user, const UserBid& bid) {
    const int id = bid.user_id;
    if (user.user_id != id) {
      flag("aux", id, {}, {}, user.user_id, id, "user id does not match the bid order");
    }
    if (!user.accepted) {
      if (user.rate_index) flag("eq2", id, {}, *user.rate_index, 1, 0, "rejected user holds a rate");
      if (!user.slots.empty()) {
        flag("eq3", id, user.slots.front().slot, {}, static_cast<double>(user.slots.size()), 0,
             "rejected user holds slots");
      }
      return;
    }
    if (!user.rate_index || *user.rate_index < 0 || *user.rate_index >= R_) {
      flag("eq2", id, {}, {}, 0, 1, "accepted user must hold exactly one valid rate");
      return;
    }
    const int r = *user.rate_index;
    const auto& rate = in_.station.rates[static_cast<std::size_t>(r)];
    const double energy = energy_per_slot(rate, in_.station.slot_minutes);
    const auto& policy = in_.policy;

    int runs = 0;
    int previous = -2;
    double delivered = 0.0;
    for (const auto& s : user.slots) {
      const int t = s.slot;
      if (t <= previous) flag("aux", id, t, r, t, previous + 1, "slots must be strictly increasing");
      if (t != previous + 1) ++runs;
      previous = t;
      delivered += s.energy_kwh;
      if (!in_horizon(t)) {
        flag("eq3", id, t, r, t, T_ - 1, "slot out of horizon");
        continue;
      }
      if (!bid.accepts(t)) flag("eq3", id, t, r, t, 0, "slot outside the user's acceptable window");
      ++usage_[cell(t, r)];
      load_[static_cast<std::size_t>(t)] += s.energy_kwh;
      if (std::abs(s.energy_kwh - energy) > kVerifyTolerance) {
        flag("eq10", id, t, r, s.energy_kwh, energy, "slot energy differs from the rate's energy per slot");
      }

      const double cost = rate.cost(t);
      if (s.at_bid) {
        ++at_bid_total_;
        floor_[cell(t, r)] = std::max(floor_[cell(t, r)], bid.bid_price);
        if (std::abs(s.final_price - bid.bid_price) > kVerifyTolerance) {
          flag("eq13", id, t, r, s.final_price, bid.bid_price, "at-bid slot not priced at the bid");
        }
        if (has_reference_ && bid.bid_price > offer_.reference_price(t, r) + kVerifyTolerance) {
          flag("eq16", id, t, r, offer_.reference_price(t, r), bid.bid_price,
               "reference price below an accepted bid");
        }
      } else {
        const double cap = bid.bid_price + rate.max_markup;
        if (s.final_price > cap + kVerifyTolerance) {
          flag("eq12b", id, t, r, s.final_price, cap, "counter price exceeds bid plus markup cap");
        }
        if (std::abs(s.final_price - s.counter_price) > kVerifyTolerance) {
          flag("eq13", id, t, r, s.final_price, s.counter_price, "final price differs from counter price");
        }
        countered_.push_back({t, r, s.final_price, id});
      }
      ++assigned_total_;
      const double low = (1.0 + policy.epsilon) * cost;
      const double high = policy.alpha * cost;
      if (s.final_price < low - kVerifyTolerance) {
        flag("eq14", id, t, r, s.final_price, low, "price below minimum margin");
      }
      if (s.final_price > high + kVerifyTolerance) {
        flag("eq15", id, t, r, s.final_price, high, "price above the cost cap");
      }
    }
    if (runs > 1) flag("eq4", id, {}, r, runs, 1, "slots do not form one contiguous window");
    if (delivered < bid.q_min - kVerifyTolerance || delivered > bid.q_max + kVerifyTolerance) {
      flag("eq7", id, {}, r, delivered, delivered < bid.q_min ? bid.q_min : bid.q_max,
           "delivered energy outside demand bounds");
    }
  }

  void check_shared_resources() {
    for (int t = 0; t < T_; ++t) {
      const double capacity = in_.station.slot_capacity[static_cast<std::size_t>(t)];
      if (load_[static_cast<std::size_t>(t)] > capacity + kVerifyTolerance) {
        flag("eq8", {}, t, {}, load_[static_cast<std::size_t>(t)], capacity, "slot capacity exceeded");
      }
      for (int r = 0; r < R_; ++r) {
        const int chargers = in_.station.rates[static_cast<std::size_t>(r)].charger_count;
        if (usage_[cell(t, r)] > chargers) {
          flag("eq9", {}, t, r, usage_[cell(t, r)], chargers, "more users than chargers");
        }
      }
    }
  }

  void check_reference_prices() {
    if (has_reference_) {
      for (int t = 0; t < T_; ++t) {
        for (int r = 0; r < R_; ++r) {
          const double p = offer_.reference_price(t, r);
          if (p < -kVerifyTolerance || p > in_.policy.price_big_m + kVerifyTolerance) {
            flag("aux", {}, t, r, p, in_.policy.price_big_m, "reference price outside [0, big-M]");
          }
        }
      }
    }
    for (const auto& c : countered_) {
      const double reference = has_reference_ ? offer_.reference_price(c.slot, c.rate) : 0.0;
      const double floor = std::max(reference, floor_[cell(c.slot, c.rate)]);
      if (c.price < floor - kVerifyTolerance) {
        flag("eq17", c.user, c.slot, c.rate, c.price, floor, "counter price below the reference price");
      }
    }
  }

  void check_bid_share() {
    const double needed = in_.policy.gamma * assigned_total_;
    if (at_bid_total_ < needed - kVerifyTolerance) {
      flag("eq18", {}, {}, {}, at_bid_total_, needed, "too few slots priced at the bid");
    }
  }

  struct Countered {
    int slot;
    int rate;
    double price;
    int user;
  };

  const OperatorOffer& offer_;
  const ProblemInstance& in_;
  int T_, R_;
  bool has_reference_ = false;
  std::vector<int> usage_;
  std::vector<double> load_;
  std::vector<double> floor_;
  std::vector<Countered> countered_;
  int at_bid_total_ = 0;
  int assigned_total_ = 0;
  ViolationReport report_;
};

}  // namespace

ViolationReport verify_offer(const OperatorOffer& offer, const ProblemInstance& instance) {
  return Verifier(offer, instance).run();
}

}  // namespace evmarket
