#include "evmarket/user_response.hpp"

#include <stdexcept>

#include "evmarket/errors.hpp"
#include "evmarket/rng.hpp"

namespace evmarket {

double markup_payment(const UserOffer& offer, const UserBid& bid) {
  double total = 0.0;
  for (const auto& s : offer.slots) total += (s.final_price - bid.bid_price) * s.energy_kwh;
  return total;
}

double utility(const UserOffer& offer, const UserBid& bid, const UserPreference& pref,
               const StationConfig& station) {
  if (!offer.accepted || !offer.rate_index) {
    throw std::invalid_argument("utility is defined only for operator-accepted users");
  }
  const double rate_kw = station.rates.at(static_cast<std::size_t>(*offer.rate_index)).rate_kw;
  return pref.theta_rate * rate_kw - pref.theta_markup * markup_payment(offer, bid);
}

std::vector<AcceptanceDecision> decide(const OperatorOffer& offer, const ProblemInstance& instance,
                                       std::span<const UserPreference> prefs) {
  std::vector<AcceptanceDecision> decisions;
  for (std::size_t i = 0; i < offer.users.size(); ++i) {
    const auto& user = offer.users[i];
    if (!user.accepted) continue;
    if (i >= prefs.size()) {
      throw MissingPreference("missing preference for accepted user " + std::to_string(user.user_id));
    }
    const auto& pref = prefs[i];
    const double u = utility(user, instance.bids.at(i), pref, instance.station);
    decisions.push_back({user.user_id, u, u >= pref.outside_option});
  }
  return decisions;
}

std::vector<UserPreference> sample_preferences(int count, std::uint64_t seed) {
  std::vector<UserPreference> prefs;
  for (int k = 0; k < count; ++k) {
    auto rng = Rng::substream(seed, kPreferenceStream, static_cast<std::uint64_t>(k));
    UserPreference pref;
    pref.theta_rate = rng.uniform(0.5, 2.0);
    pref.theta_markup = rng.uniform(0.5, 2.0);
    pref.outside_option = 0.0;
    prefs.push_back(pref);
  }
  return prefs;
}

}  // namespace evmarket
