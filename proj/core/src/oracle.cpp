#include "evmarket/oracle.hpp"

#include <algorithm>

#include "evmarket/errors.hpp"

namespace evmarket {

namespace {

constexpr double kSlack = 1e-9;

struct UserOption {
  int rate = -1;  // -1: rejected
  int start = 0;
  int length = 0;
  unsigned at_bid_mask = 0;  // bit k set: slot start + k priced at the bid
  double at_bid_profit = 0.0;
  int at_bid_count = 0;
};

class Enumerator {
 public:
  explicit Enumerator(const ProblemInstance& instance)
      : in_(instance), U_(instance.num_users()), T_(instance.num_slots()), R_(instance.num_rates()) {
    options_.resize(static_cast<std::size_t>(U_));
    for (int i = 0; i < U_; ++i) build_options(i);
    usage_.assign(static_cast<std::size_t>(T_ * R_), 0);
    load_.assign(static_cast<std::size_t>(T_), 0.0);
    choice_.assign(static_cast<std::size_t>(U_), 0);
  }

  OperatorOffer run() {
    search(0, 0, 0);
    return make_offer();
  }

 private:
  double energy(int r) const { return in_.station.energy_per_slot(r); }
  const RateLevel& rate(int r) const { return in_.station.rates[static_cast<std::size_t>(r)]; }
  const UserBid& bid(int i) const { return in_.bids[static_cast<std::size_t>(i)]; }
  std::size_t cell(int t, int r) const { return static_cast<std::size_t>(t * R_ + r); }

  // Highest feasible countered price for the cell, ignoring the reference floor.
  double counter_price(int i, int t, int r) const {
    return std::min(bid(i).bid_price + rate(r).max_markup, in_.policy.alpha * rate(r).cost(t));
  }

  void build_options(int i) {
    auto& list = options_[static_cast<std::size_t>(i)];
    list.push_back(UserOption{});
    const auto& b = bid(i);
    const auto& policy = in_.policy;
    for (int r = 0; r < R_; ++r) {
      const double e = energy(r);
      for (int start = 0; start < T_; ++start) {
        for (int length = 1; start + length <= T_; ++length) {
          if (!b.accepts(start + length - 1)) break;
          const double delivered = e * length;
          if (delivered < b.q_min - kSlack || delivered > b.q_max + kSlack) continue;
          for (unsigned mask = 0; mask < (1u << length); ++mask) {
            UserOption option{r, start, length, mask, 0.0, 0};
            bool feasible = true;
            for (int k = 0; k < length && feasible; ++k) {
              const int t = start + k;
              const double cost = rate(r).cost(t);
              if (mask & (1u << k)) {
                feasible = b.bid_price >= (1.0 + policy.epsilon) * cost - kSlack &&
                           b.bid_price <= policy.alpha * cost + kSlack;
                option.at_bid_profit += e * (b.bid_price - cost);
                ++option.at_bid_count;
              } else {
                feasible = counter_price(i, t, r) >= (1.0 + policy.epsilon) * cost - kSlack;
              }
            }
            if (feasible) list.push_back(option);
          }
        }
      }
    }
  }

  void search(int i, int at_bid, int assigned) {
    if (i == U_) {
      evaluate(at_bid, assigned);
      return;
    }
    const auto& list = options_[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto& option = list[k];
      if (option.rate >= 0 && !place(option, +1)) {
        place(option, -1);
        continue;
      }
      choice_[static_cast<std::size_t>(i)] = k;
      search(i + 1, at_bid + option.at_bid_count, assigned + option.length);
      if (option.rate >= 0) place(option, -1);
    }
  }

  // Adds (+1) or removes (-1) an option's footprint; reports whether the
  // charger and capacity limits still hold after adding.
  bool place(const UserOption& option, int sign) {
    bool ok = true;
    const double e = energy(option.rate);
    for (int k = 0; k < option.length; ++k) {
      const int t = option.start + k;
      usage_[cell(t, option.rate)] += sign;
      load_[static_cast<std::size_t>(t)] += sign * e;
      ok = ok && usage_[cell(t, option.rate)] <= rate(option.rate).charger_count &&
           load_[static_cast<std::size_t>(t)] <= in_.station.slot_capacity[static_cast<std::size_t>(t)] + kSlack;
    }
    return ok;
  }

  const UserOption& chosen(int i) const {
    return options_[static_cast<std::size_t>(i)][choice_[static_cast<std::size_t>(i)]];
  }

  std::vector<double> reference_floors() const {
    std::vector<double> floor(static_cast<std::size_t>(T_ * R_), 0.0);
    for (int i = 0; i < U_; ++i) {
      const auto& option = chosen(i);
      for (int k = 0; k < option.length; ++k) {
        if (option.at_bid_mask & (1u << k)) {
          auto& f = floor[cell(option.start + k, option.rate)];
          f = std::max(f, bid(i).bid_price);
        }
      }
    }
    return floor;
  }

  void evaluate(int at_bid, int assigned) {
    if (at_bid < in_.policy.gamma * assigned - kSlack) return;
    const auto floor = reference_floors();
    double profit = 0.0;
    for (int i = 0; i < U_; ++i) {
      const auto& option = chosen(i);
      if (option.rate < 0) continue;
      profit += option.at_bid_profit;
      for (int k = 0; k < option.length; ++k) {
        if (option.at_bid_mask & (1u << k)) continue;
        const int t = option.start + k;
        const double price = counter_price(i, t, option.rate);
        if (price < floor[cell(t, option.rate)] - kSlack) return;
        profit += energy(option.rate) * (price - rate(option.rate).cost(t));
      }
    }
    if (!found_ || profit > best_profit_ + kSlack) {
      found_ = true;
      best_profit_ = profit;
      best_ = choice_;
    }
  }

  OperatorOffer make_offer() {
    choice_ = best_;
    OperatorOffer offer;
    offer.num_rates = R_;
    offer.objective = found_ ? best_profit_ : 0.0;
    offer.reference_prices = reference_floors();
    for (int i = 0; i < U_; ++i) {
      const auto& option = chosen(i);
      UserOffer user;
      user.user_id = bid(i).user_id;
      user.accepted = option.rate >= 0;
      if (user.accepted) {
        user.rate_index = option.rate;
        for (int k = 0; k < option.length; ++k) {
          const int t = option.start + k;
          SlotOffer slot;
          slot.slot = t;
          slot.at_bid = (option.at_bid_mask & (1u << k)) != 0;
          slot.energy_kwh = energy(option.rate);
          if (slot.at_bid) {
            slot.final_price = bid(i).bid_price;
          } else {
            slot.counter_price = counter_price(i, t, option.rate);
            slot.final_price = slot.counter_price;
          }
          user.slots.push_back(slot);
        }
      }
      offer.users.push_back(std::move(user));
    }
    return offer;
  }

  const ProblemInstance& in_;
  int U_, T_, R_;
  std::vector<std::vector<UserOption>> options_;
  std::vector<int> usage_;
  std::vector<double> load_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> best_;
  bool found_ = false;
  double best_profit_ = 0.0;
};

}  // namespace

OperatorOffer exhaustive_oracle(const ProblemInstance& instance) {
  require_valid(instance);
  const long cells = static_cast<long>(instance.num_users()) * instance.num_slots() * instance.num_rates();
  if (cells > kOracleCellBudget) {
    throw OracleBudgetExceeded("oracle budget exceeded: " + std::to_string(cells) + " cells > " +
                               std::to_string(kOracleCellBudget));
  }
  return Enumerator(instance).run();
}

}  // namespace evmarket
