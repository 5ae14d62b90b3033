#include "evmarket/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "evmarket/errors.hpp"

namespace evmarket {

namespace {

constexpr std::array<std::string_view, 19> kTagCodes = {
    "eq2",  "eq3",  "eq4",  "eq5",   "eq6",  "eq7",  "eq8",  "eq9",  "eq10", "eq11",
    "eq12", "eq12b", "eq13", "eq14", "eq15", "eq16", "eq17", "eq18", "aux",
};

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view tag_code(ConstraintTag tag) { return kTagCodes.at(static_cast<std::size_t>(tag)); }

std::optional<ConstraintTag> tag_from_code(std::string_view code) {
  for (std::size_t k = 0; k < kTagCodes.size(); ++k) {
    if (kTagCodes[k] == code) return static_cast<ConstraintTag>(k);
  }
  return std::nullopt;
}

ModelLayout::ModelLayout(int users, int slots, int rates)
    : users_(users), slots_(slots), rates_(rates) {
  const int cells = users * slots * rates;
  const int user_slots = users * slots;
  int next = 0;
  auto take = [&next](int size) {
    const int start = next;
    next += size;
    return start;
  };
  z_ = take(cells);
  x_bid_ = take(cells);
  x_counter_ = take(cells);
  y_ = take(users * rates);
  a_ = take(users);
  z_start_ = take(user_slots);
  z_end_ = take(user_slots);
  p_counter_ = take(cells);
  p_final_ = take(cells);
  q_ = take(user_slots);
  p_ref_ = take(slots * rates);
  total_ = next;
}

int ModelDescription::count(VarKind kind) const {
  return static_cast<int>(std::count_if(variables.begin(), variables.end(),
                                        [kind](const Variable& v) { return v.kind == kind; }));
}

std::optional<int> ModelDescription::find_variable(std::string_view name) const {
  for (std::size_t k = 0; k < variables.size(); ++k) {
    if (variables[k].name == name) return static_cast<int>(k);
  }
  return std::nullopt;
}

std::vector<const LinearRow*> ModelDescription::rows_tagged(ConstraintTag tag) const {
  std::vector<const LinearRow*> rows;
  for (const auto& row : constraints) {
    if (row.tag == tag) rows.push_back(&row);
  }
  return rows;
}

namespace {

std::string indexed(std::string_view stem, std::initializer_list<int> indices) {
  std::string name(stem);
  for (int k : indices) {
    name += '_';
    name += std::to_string(k);
  }
  return name;
}

class Builder {
 public:
  explicit Builder(const ProblemInstance& instance)
      : in_(instance),
        users_(instance.num_users()),
        slots_(instance.num_slots()),
        rates_(instance.num_rates()) {
    model_.layout = ModelLayout(users_, slots_, rates_);
    model_.variables.resize(static_cast<std::size_t>(model_.layout.num_variables()));
  }

  ModelDescription build() && {
    declare_variables();
    add_assignment_rows();
    add_window_rows();
    add_energy_rows();
    add_price_rows();
    add_objective();
    return std::move(model_);
  }

 private:
  const ModelLayout& L() const { return model_.layout; }

  void declare(int index, std::string name, VarKind kind, double lower, double upper) {
    model_.variables[static_cast<std::size_t>(index)] = {std::move(name), kind, lower, upper};
  }

  void row(ConstraintTag tag, std::string name, std::vector<Term> terms, Sense sense, double rhs) {
    model_.constraints.push_back({std::move(name), tag, std::move(terms), sense, rhs});
  }

  void declare_variables() {
    const double big_m = in_.policy.price_big_m;
    for (int i = 0; i < users_; ++i) {
      for (int t = 0; t < slots_; ++t) {
        for (int r = 0; r < rates_; ++r) {
          declare(L().z(i, t, r), indexed("z", {i, t, r}), VarKind::Binary, 0, 1);
          declare(L().x_bid(i, t, r), indexed("xB", {i, t, r}), VarKind::Binary, 0, 1);
          declare(L().x_counter(i, t, r), indexed("xN", {i, t, r}), VarKind::Binary, 0, 1);
          declare(L().p_counter(i, t, r), indexed("pN", {i, t, r}), VarKind::Continuous, 0, kInf);
          declare(L().p_final(i, t, r), indexed("pF", {i, t, r}), VarKind::Continuous, 0, kInf);
        }
        declare(L().z_start(i, t), indexed("zs", {i, t}), VarKind::Binary, 0, 1);
        declare(L().z_end(i, t), indexed("ze", {i, t}), VarKind::Binary, 0, 1);
        declare(L().q(i, t), indexed("q", {i, t}), VarKind::Continuous, 0, kInf);
      }
      for (int r = 0; r < rates_; ++r) {
        declare(L().y(i, r), indexed("y", {i, r}), VarKind::Binary, 0, 1);
      }
      declare(L().a(i), indexed("a", {i}), VarKind::Binary, 0, 1);
    }
    for (int t = 0; t < slots_; ++t) {
      for (int r = 0; r < rates_; ++r) {
        declare(L().p_ref(t, r), indexed("pR", {t, r}), VarKind::Continuous, 0, big_m);
      }
    }
  }

  void add_assignment_rows() {
    for (int i = 0; i < users_; ++i) {
      std::vector<Term> rate_sum;
      for (int r = 0; r < rates_; ++r) rate_sum.push_back({L().y(i, r), 1.0});
      rate_sum.push_back({L().a(i), -1.0});
      row(ConstraintTag::AcceptRate, indexed("eq2", {i}), std::move(rate_sum), Sense::Equal, 0.0);

      const auto& bid = in_.bids[static_cast<std::size_t>(i)];
      for (int t = 0; t < slots_; ++t) {
        std::vector<Term> terms;
        for (int r = 0; r < rates_; ++r) terms.push_back({L().z(i, t, r), 1.0});
        const double available = bid.accepts(t) ? 1.0 : 0.0;
        if (available != 0.0) terms.push_back({L().a(i), -available});
        row(ConstraintTag::Availability, indexed("eq3", {i, t}), std::move(terms), Sense::LessEqual,
            0.0);
      }
      for (int t = 0; t < slots_; ++t) {
        for (int r = 0; r < rates_; ++r) {
          row(ConstraintTag::RateLink, indexed("eq11", {i, t, r}),
              {{L().z(i, t, r), 1.0}, {L().y(i, r), -1.0}}, Sense::LessEqual, 0.0);
        }
      }
    }
  }

  void add_window_rows() {
    for (int i = 0; i < users_; ++i) {
      std::vector<Term> starts, ends;
      for (int t = 0; t < slots_; ++t) {
        starts.push_back({L().z_start(i, t), 1.0});
        ends.push_back({L().z_end(i, t), 1.0});
      }
      row(ConstraintTag::SingleWindow, indexed("eq4_start", {i}), std::move(starts),
          Sense::LessEqual, 1.0);
      row(ConstraintTag::SingleWindow, indexed("eq4_end", {i}), std::move(ends), Sense::LessEqual,
          1.0);
      // Slots outside the horizon are fixed at zero, so the boundary terms drop out.
      for (int t = 0; t < slots_; ++t) {
        for (int r = 0; r < rates_; ++r) {
          std::vector<Term> start{{L().z_start(i, t), 1.0}, {L().z(i, t, r), -1.0}};
          if (t > 0) start.push_back({L().z(i, t - 1, r), 1.0});
          row(ConstraintTag::WindowStart, indexed("eq5", {i, t, r}), std::move(start),
              Sense::GreaterEqual, 0.0);

          std::vector<Term> end{{L().z_end(i, t), 1.0}, {L().z(i, t, r), -1.0}};
          if (t + 1 < slots_) end.push_back({L().z(i, t + 1, r), 1.0});
          row(ConstraintTag::WindowEnd, indexed("eq6", {i, t, r}), std::move(end),
              Sense::GreaterEqual, 0.0);
        }
      }
    }
  }

  void add_energy_rows() {
    const auto& station = in_.station;
    for (int i = 0; i < users_; ++i) {
      const auto& bid = in_.bids[static_cast<std::size_t>(i)];
      std::vector<Term> low, high;
      for (int t = 0; t < slots_; ++t) {
        low.push_back({L().q(i, t), 1.0});
        high.push_back({L().q(i, t), 1.0});
      }
      low.push_back({L().a(i), -bid.q_min});
      high.push_back({L().a(i), -bid.q_max});
      row(ConstraintTag::DemandBounds, indexed("eq7_min", {i}), std::move(low), Sense::GreaterEqual,
          0.0);
      row(ConstraintTag::DemandBounds, indexed("eq7_max", {i}), std::move(high), Sense::LessEqual,
          0.0);

      for (int t = 0; t < slots_; ++t) {
        std::vector<Term> delivered{{L().q(i, t), 1.0}};
        for (int r = 0; r < rates_; ++r) {
          delivered.push_back({L().z(i, t, r), -station.energy_per_slot(r)});
        }
        row(ConstraintTag::DeliveredEnergy, indexed("eq10", {i, t}), std::move(delivered),
            Sense::Equal, 0.0);
      }
    }
    for (int t = 0; t < slots_; ++t) {
      std::vector<Term> load;
      for (int i = 0; i < users_; ++i) load.push_back({L().q(i, t), 1.0});
      row(ConstraintTag::SlotCapacity, indexed("eq8", {t}), std::move(load), Sense::LessEqual,
          station.slot_capacity[static_cast<std::size_t>(t)]);
      for (int r = 0; r < rates_; ++r) {
        std::vector<Term> busy;
        for (int i = 0; i < users_; ++i) busy.push_back({L().z(i, t, r), 1.0});
        row(ConstraintTag::ChargerCount, indexed("eq9", {t, r}), std::move(busy), Sense::LessEqual,
            station.rates[static_cast<std::size_t>(r)].charger_count);
      }
    }
  }

  void add_price_rows() {
    const auto& policy = in_.policy;
    std::vector<Term> share;
    for (int i = 0; i < users_; ++i) {
      const double bid = in_.bids[static_cast<std::size_t>(i)].bid_price;
      for (int t = 0; t < slots_; ++t) {
        for (int r = 0; r < rates_; ++r) {
          const auto& rate = in_.station.rates[static_cast<std::size_t>(r)];
          const double cost = rate.cost(t);
          const int z = L().z(i, t, r), xb = L().x_bid(i, t, r), xn = L().x_counter(i, t, r);
          const int pn = L().p_counter(i, t, r), pf = L().p_final(i, t, r);
          const int pr = L().p_ref(t, r);

          row(ConstraintTag::PriceSplit, indexed("eq12", {i, t, r}),
              {{xb, 1.0}, {xn, 1.0}, {z, -1.0}}, Sense::Equal, 0.0);
          row(ConstraintTag::CounterCap, indexed("eq12b", {i, t, r}),
              {{pn, 1.0}, {xn, -(bid + rate.max_markup)}}, Sense::LessEqual, 0.0);
          row(ConstraintTag::FinalPrice, indexed("eq13", {i, t, r}),
              {{pf, 1.0}, {xb, -bid}, {pn, -1.0}}, Sense::Equal, 0.0);
          row(ConstraintTag::MinMargin, indexed("eq14", {i, t, r}),
              {{pf, 1.0}, {z, -(1.0 + policy.epsilon) * cost}}, Sense::GreaterEqual, 0.0);
          row(ConstraintTag::PriceCap, indexed("eq15", {i, t, r}), {{pf, 1.0}}, Sense::LessEqual,
              policy.alpha * cost);
          row(ConstraintTag::ReferenceFloor, indexed("eq16", {i, t, r}), {{pr, 1.0}, {xb, -bid}},
              Sense::GreaterEqual, 0.0);
          row(ConstraintTag::CounterAboveReference, indexed("eq17", {i, t, r}),
              {{pn, 1.0}, {pr, -1.0}, {xn, -policy.price_big_m}}, Sense::GreaterEqual,
              -policy.price_big_m);

          add_price_tightening(i, t, r, bid, rate.max_markup, cost);

          share.push_back({xb, 1.0});
          share.push_back({z, -policy.gamma});
        }
      }
    }
    row(ConstraintTag::BidShare, "eq18", share, Sense::GreaterEqual, 0.0);
    add_share_hull_rows(share);
  }

  // Valid on every feasible point: pF and pN vanish with z and xN, and a
  // pricing mode whose price window is empty can never be used.
  void add_price_tightening(int i, int t, int r, double bid, double markup, double cost) {
    const auto& policy = in_.policy;
    const double cap = policy.alpha * cost;
    const double floor = (1.0 + policy.epsilon) * cost;
    const double counter_max = std::min(bid + markup, cap);
    const int z = L().z(i, t, r), xb = L().x_bid(i, t, r), xn = L().x_counter(i, t, r);
    row(ConstraintTag::Aux, indexed("aux_cap", {i, t, r}), {{L().p_final(i, t, r), 1.0}, {z, -cap}},
        Sense::LessEqual, 0.0);
    if (counter_max < bid + markup) {
      row(ConstraintTag::Aux, indexed("aux_counter", {i, t, r}),
          {{L().p_counter(i, t, r), 1.0}, {xn, -counter_max}}, Sense::LessEqual, 0.0);
    }
    if (bid < floor || bid > cap) {
      row(ConstraintTag::Aux, indexed("aux_no_bid", {i, t, r}), {{xb, 1.0}}, Sense::LessEqual, 0.0);
    }
    if (counter_max < floor) {
      row(ConstraintTag::Aux, indexed("aux_no_counter", {i, t, r}), {{xn, 1.0}}, Sense::LessEqual, 0.0);
    }
  }

  // Both sums in the share row are integers on feasible points, so the at-bid
  // count s and the assigned count w satisfy s >= ceil(gamma w) with w <= W.
  // The lower convex hull of those points gives valid rows that the LP
  // relaxation of the share row alone misses.
  void add_share_hull_rows(const std::vector<Term>& share) {
    const double gamma = in_.policy.gamma;
    const int limit = max_assignable_cells();
    std::vector<std::pair<int, int>> hull;
    for (int w = 0; w <= limit; ++w) {
      const int need = static_cast<int>(std::ceil(gamma * w - 1e-9));
      while (hull.size() >= 2) {
        const auto [w1, s1] = hull[hull.size() - 2];
        const auto [w2, s2] = hull.back();
        if (static_cast<long long>(w2 - w1) * (need - s1) - static_cast<long long>(s2 - s1) * (w - w1) > 0) break;
        hull.pop_back();
      }
      hull.emplace_back(w, need);
    }
    int k = 0;
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
      const auto [w1, s1] = hull[e];
      const auto [w2, s2] = hull[e + 1];
      const bool on_share_line = std::fabs(s1 - gamma * w1) < 1e-9 && std::fabs(s2 - gamma * w2) < 1e-9;
      if (on_share_line || (s1 == 0 && s2 == 0)) continue;
      const double dw = w2 - w1, ds = s2 - s1;
      std::vector<Term> terms;
      for (const auto& term : share) terms.push_back({term.var, term.coeff > 0.0 ? dw : -ds});
      row(ConstraintTag::Aux, indexed("aux_share", {k++}), std::move(terms), Sense::GreaterEqual,
          dw * s1 - ds * w1);
    }
  }

  // Upper bound on the number of assigned (i, t, r) cells.
  int max_assignable_cells() const {
    const auto& station = in_.station;
    double min_energy = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rates_; ++r) min_energy = std::min(min_energy, station.energy_per_slot(r));
    long long per_slot_total = 0;
    for (int t = 0; t < slots_; ++t) {
      int available = 0;
      for (const auto& bid : in_.bids) available += bid.accepts(t) ? 1 : 0;
      long long chargers = 0;
      for (const auto& rate : station.rates) chargers += std::min(rate.charger_count, available);
      const double by_energy = std::floor(station.slot_capacity[static_cast<std::size_t>(t)] / min_energy + 1e-9);
      per_slot_total += std::min<long long>({chargers, available, static_cast<long long>(by_energy)});
    }
    long long per_user_total = 0;
    for (const auto& bid : in_.bids) {
      const double by_demand = std::floor(bid.q_max / min_energy + 1e-9);
      per_user_total += std::min<long long>(static_cast<long long>(bid.acceptable_slots.size()),
                                            static_cast<long long>(std::min(by_demand, 1e9)));
    }
    return static_cast<int>(std::min(per_slot_total, per_user_total));
  }

  // Profit sum E_r * (pF - c * z); pF vanishes on unassigned cells, so this
  // equals the product form on every feasible point.
  void add_objective() {
    for (int i = 0; i < users_; ++i) {
      for (int t = 0; t < slots_; ++t) {
        for (int r = 0; r < rates_; ++r) {
          const double energy = in_.station.energy_per_slot(r);
          const double cost = in_.station.rates[static_cast<std::size_t>(r)].cost(t);
          model_.objective.push_back({L().p_final(i, t, r), energy});
          model_.objective.push_back({L().z(i, t, r), -energy * cost});
        }
      }
    }
  }

  const ProblemInstance& in_;
  int users_, slots_, rates_;
  ModelDescription model_;
};

}  // namespace

ModelDescription build_model(const ProblemInstance& instance) {
  require_valid(instance);
  return Builder(instance).build();
}

namespace {

void require_matching(const ModelDescription& model, const ProblemInstance& instance) {
  const auto& L = model.layout;
  if (L.num_users() != instance.num_users() || L.num_slots() != instance.num_slots() ||
      L.num_rates() != instance.num_rates()) {
    throw InvalidInstance("model dimensions do not match the instance");
  }
}

// Maximal runs of consecutive acceptable slots, as [first, last].
std::vector<std::pair<int, int>> acceptable_runs(const UserBid& bid) {
  std::vector<std::pair<int, int>> runs;
  for (int t : bid.acceptable_slots) {
    if (!runs.empty() && runs.back().second + 1 == t) {
      runs.back().second = t;
    } else {
      runs.emplace_back(t, t);
    }
  }
  return runs;
}

// Slot counts on one rate that meet the demand bounds, before availability.
std::pair<int, int> slot_count_range(const UserBid& bid, double energy, int slots) {
  const int fewest = static_cast<int>(std::ceil(bid.q_min / energy - 1e-9));
  const int most = static_cast<int>(std::min<double>(slots, std::floor(bid.q_max / energy + 1e-9)));
  return {std::max(fewest, 0), most};
}

}  // namespace

void add_window_columns(ModelDescription& model, const ProblemInstance& instance) {
  require_matching(model, instance);
  const auto& L = model.layout;
  const int slots = L.num_slots();
  for (int i = 0; i < L.num_users(); ++i) {
    const auto& bid = instance.bids[static_cast<std::size_t>(i)];
    const auto runs = acceptable_runs(bid);
    for (int r = 0; r < L.num_rates(); ++r) {
      auto [shortest, longest] = slot_count_range(bid, instance.station.energy_per_slot(r), slots);
      shortest = std::max(shortest, 1);
      std::vector<std::vector<Term>> cover(static_cast<std::size_t>(slots));
      std::vector<Term> on_rate{{L.y(i, r), -1.0}};
      for (const auto& [first, last] : runs) {
        for (int n = shortest; n <= std::min(longest, last - first + 1); ++n) {
          for (int s = first; s + n - 1 <= last; ++s) {
            const int w = static_cast<int>(model.variables.size());
            model.variables.push_back({indexed("w", {i, r, s, n}), VarKind::Binary, 0.0, 1.0});
            on_rate.push_back({w, 1.0});
            for (int t = s; t < s + n; ++t) cover[static_cast<std::size_t>(t)].push_back({w, -1.0});
          }
        }
      }
      for (int t = 0; t < slots; ++t) {
        auto terms = std::move(cover[static_cast<std::size_t>(t)]);
        terms.insert(terms.begin(), Term{L.z(i, t, r), 1.0});
        model.constraints.push_back({indexed("aux_window", {i, t, r}), ConstraintTag::Aux, std::move(terms),
                                     Sense::Equal, 0.0});
      }
      model.constraints.push_back({indexed("aux_window_rate", {i, r}), ConstraintTag::Aux, std::move(on_rate),
                                   Sense::LessEqual, 0.0});
    }
  }
}

void add_count_columns(ModelDescription& model, const ProblemInstance& instance) {
  require_matching(model, instance);
  const auto& L = model.layout;
  const auto& policy = instance.policy;
  for (int i = 0; i < L.num_users(); ++i) {
    const auto& bid = instance.bids[static_cast<std::size_t>(i)];
    int longest_run = 0;
    for (const auto& [first, last] : acceptable_runs(bid)) longest_run = std::max(longest_run, last - first + 1);
    for (int r = 0; r < L.num_rates(); ++r) {
      const auto& rate = instance.station.rates[static_cast<std::size_t>(r)];
      auto [fewest, most] = slot_count_range(bid, instance.station.energy_per_slot(r), L.num_slots());
      most = std::min(most, longest_run);
      // Pricing modes that no acceptable slot admits.
      bool at_bid = false, countered = false;
      for (int t : bid.acceptable_slots) {
        const double cost = rate.cost_per_kwh[static_cast<std::size_t>(t)];
        const double floor = (1.0 + policy.epsilon) * cost, cap = policy.alpha * cost;
        at_bid = at_bid || (bid.bid_price >= floor && bid.bid_price <= cap);
        countered = countered || std::min(bid.bid_price + rate.max_markup, cap) >= floor;
      }
      std::vector<Term> pick{{L.y(i, r), -1.0}};
      std::vector<Term> slots_used, slots_at_bid;
      for (int t = 0; t < L.num_slots(); ++t) {
        slots_used.push_back({L.z(i, t, r), 1.0});
        slots_at_bid.push_back({L.x_bid(i, t, r), 1.0});
      }
      for (int n = fewest; n <= most; ++n) {
        // k slots at the bid, n - k countered.
        for (int k = countered ? 0 : n; k <= (at_bid ? n : 0); ++k) {
          const int u = static_cast<int>(model.variables.size());
          model.variables.push_back({indexed("u", {i, r, n, k}), VarKind::Binary, 0.0, 1.0});
          pick.push_back({u, 1.0});
          if (n > 0) slots_used.push_back({u, -static_cast<double>(n)});
          if (k > 0) slots_at_bid.push_back({u, -static_cast<double>(k)});
        }
      }
      model.constraints.push_back({indexed("aux_count_pick", {i, r}), ConstraintTag::Aux, std::move(pick),
                                   Sense::Equal, 0.0});
      model.constraints.push_back({indexed("aux_count_slots", {i, r}), ConstraintTag::Aux, std::move(slots_used),
                                   Sense::Equal, 0.0});
      model.constraints.push_back({indexed("aux_count_at_bid", {i, r}), ConstraintTag::Aux,
                                   std::move(slots_at_bid), Sense::Equal, 0.0});
    }
  }
}

void add_counter_budget(ModelDescription& model, const ProblemInstance& instance) {
  const auto& L = model.layout;
  const int budget = static_cast<int>(model.variables.size());
  model.variables.push_back({"nN", VarKind::Integer, 0.0,
                             static_cast<double>(L.num_users() * L.num_slots() * L.num_rates())});
  std::vector<Term> countered{{budget, -1.0}};
  std::vector<Term> allowed{{budget, 1.0}};
  const double free_share = 1.0 - instance.policy.gamma;
  for (int i = 0; i < L.num_users(); ++i) {
    for (int t = 0; t < L.num_slots(); ++t) {
      for (int r = 0; r < L.num_rates(); ++r) {
        countered.push_back({L.x_counter(i, t, r), 1.0});
        if (free_share != 0.0) allowed.push_back({L.z(i, t, r), -free_share});
      }
    }
  }
  model.constraints.push_back({"aux_counter_budget", ConstraintTag::Aux, std::move(countered), Sense::LessEqual, 0.0});
  model.constraints.push_back({"aux_counter_share", ConstraintTag::Aux, std::move(allowed), Sense::LessEqual, 0.0});
}

void add_solver_extensions(ModelDescription& model, const ProblemInstance& instance) {
  add_window_columns(model, instance);
  add_count_columns(model, instance);
  add_counter_budget(model, instance);
}

double row_activity(const LinearRow& row, const std::vector<double>& values) {
  double sum = 0.0;
  for (const auto& term : row.terms) sum += term.coeff * values.at(static_cast<std::size_t>(term.var));
  return sum;
}

double objective_value(const ModelDescription& model, const std::vector<double>& values) {
  double sum = 0.0;
  for (const auto& term : model.objective) {
    sum += term.coeff * values.at(static_cast<std::size_t>(term.var));
  }
  return sum;
}

double max_violation(const ModelDescription& model, const std::vector<double>& values) {
  double worst = 0.0;
  for (std::size_t k = 0; k < model.variables.size(); ++k) {
    const auto& v = model.variables[k];
    worst = std::max({worst, v.lower - values[k], values[k] - v.upper});
    if (v.kind != VarKind::Continuous) {
      worst = std::max(worst, std::abs(values[k] - std::round(values[k])));
    }
  }
  for (const auto& row : model.constraints) {
    const double lhs = row_activity(row, values);
    switch (row.sense) {
      case Sense::LessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Sense::GreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Sense::Equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

namespace {

void write_terms(std::ostream& out, const ModelDescription& model, const std::vector<Term>& terms) {
  bool first = true;
  int on_line = 0;
  for (const auto& term : terms) {
    if (term.coeff == 0.0) continue;
    const double magnitude = std::abs(term.coeff);
    if (term.coeff < 0) {
      out << " - ";
    } else if (!first) {
      out << " + ";
    } else {
      out << ' ';
    }
    if (magnitude != 1.0) out << magnitude << ' ';
    out << model.variables[static_cast<std::size_t>(term.var)].name;
    first = false;
    // The format caps line length; wrap long rows.
    if (++on_line % 8 == 0) out << "\n   ";
  }
  if (first) out << " 0 " << (model.variables.empty() ? "" : model.variables.front().name);
}

}  // namespace

void write_lp(const ModelDescription& model, std::ostream& out) {
  const auto precision = out.precision(12);
  out << "\\ EV charging operator model\n";
  out << "Maximize\n obj:";
  write_terms(out, model, model.objective);
  out << "\nSubject To\n";
  for (const auto& row : model.constraints) {
    out << ' ' << row.name << ':';
    write_terms(out, model, row.terms);
    switch (row.sense) {
      case Sense::LessEqual: out << " <= "; break;
      case Sense::GreaterEqual: out << " >= "; break;
      case Sense::Equal: out << " = "; break;
    }
    out << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::Binary) continue;
    out << ' ' << v.lower << " <= " << v.name << " <= ";
    if (std::isinf(v.upper)) {
      out << "+inf\n";
    } else {
      out << v.upper << '\n';
    }
  }
  out << "Binaries\n";
  int on_line = 0;
  for (const auto& v : model.variables) {
    if (v.kind != VarKind::Binary) continue;
    out << ' ' << v.name;
    if (++on_line % 10 == 0) out << '\n';
  }
  on_line = 0;
  bool generals = false;
  for (const auto& v : model.variables) {
    if (v.kind != VarKind::Integer) continue;
    if (!generals) out << "\nGenerals\n";
    generals = true;
    out << ' ' << v.name;
    if (++on_line % 10 == 0) out << '\n';
  }
  out << "\nEnd\n";
  out.precision(precision);
}

std::string to_lp_string(const ModelDescription& model) {
  std::ostringstream out;
  write_lp(model, out);
  return out.str();
}

}  // namespace evmarket
