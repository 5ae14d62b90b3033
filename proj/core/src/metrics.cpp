#include "evmarket/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace evmarket {

std::optional<double> gini(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  if (total == 0.0) return 0.0;
  // With ascending order, sum_ij |v_i - v_j| = 2 sum_k (2k - n - 1) v_k (k 1-based).
  double weighted = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    weighted += (2.0 * static_cast<double>(k + 1) - n - 1.0) * sorted[k];
  }
  return std::max(0.0, weighted / (n * total));
}

ScenarioMetrics compute_metrics(const OperatorOffer& offer, const ProblemInstance& instance,
                                std::optional<std::span<const AcceptanceDecision>> decisions,
                                PriceAveraging averaging) {
  ScenarioMetrics m;
  m.user_count = static_cast<int>(offer.users.size());
  m.operator_profit = offer_profit(offer, instance);

  std::vector<double> prices;
  std::vector<double> markups;
  for (std::size_t i = 0; i < offer.users.size(); ++i) {
    const auto& user = offer.users[i];
    if (!user.accepted) continue;
    ++m.accepted_users;
    const double bid = instance.bids.at(i).bid_price;
    if (averaging == PriceAveraging::Slots) {
      for (const auto& s : user.slots) {
        prices.push_back(s.final_price);
        markups.push_back(s.final_price - bid);
      }
    } else if (!user.slots.empty()) {
      double sum = 0.0;
      for (const auto& s : user.slots) sum += s.final_price;
      const double mean = sum / static_cast<double>(user.slots.size());
      prices.push_back(mean);
      markups.push_back(mean - bid);
    }
  }
  if (m.user_count > 0) {
    m.acceptance_rate = static_cast<double>(m.accepted_users) / m.user_count;
  }
  if (!prices.empty()) {
    m.mean_final_price = std::accumulate(prices.begin(), prices.end(), 0.0) / static_cast<double>(prices.size());
    m.mean_markup = std::accumulate(markups.begin(), markups.end(), 0.0) / static_cast<double>(markups.size());
    m.gini = gini(prices);
  }
  if (decisions && m.accepted_users > 0) {
    const auto yes = std::count_if(decisions->begin(), decisions->end(),
                                   [](const AcceptanceDecision& d) { return d.accepted; });
    m.post_response_acceptance = static_cast<double>(yes) / m.accepted_users;
  }
  return m;
}

namespace {

// Welford's running mean and sum of squared deviations.
class Running {
 public:
  void add(std::optional<double> x) {
    if (!x) return;
    ++count_;
    const double delta = *x - mean_;
    mean_ += delta / count_;
    m2_ += delta * (*x - mean_);
  }

  std::optional<Statistic> result() const {
    if (count_ == 0) return std::nullopt;
    return Statistic{mean_, std::sqrt(std::max(0.0, m2_ / count_)), count_};
  }

 private:
  int count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

AggregateMetrics aggregate(std::span<const SeedMetrics> runs) {
  std::vector<const SeedMetrics*> ordered;
  for (const auto& run : runs) ordered.push_back(&run);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const SeedMetrics* a, const SeedMetrics* b) { return a->seed < b->seed; });

  Running profit, acceptance, price, markup, gini_index, response;
  for (const auto* run : ordered) {
    const auto& m = run->metrics;
    profit.add(m.operator_profit);
    acceptance.add(m.acceptance_rate);
    price.add(m.mean_final_price);
    markup.add(m.mean_markup);
    gini_index.add(m.gini);
    response.add(m.post_response_acceptance);
  }
  AggregateMetrics out;
  out.seed_count = static_cast<int>(ordered.size());
  out.profit = profit.result();
  out.acceptance = acceptance.result();
  out.final_price = price.result();
  out.markup = markup.result();
  out.gini = gini_index.result();
  out.post_response_acceptance = response.result();
  return out;
}

}  // namespace evmarket
