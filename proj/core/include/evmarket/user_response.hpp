#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evmarket/domain.hpp"
#include "evmarket/offer.hpp"

namespace evmarket {

struct UserPreference {
  // Utility per kW of assigned charging rate.
  double theta_rate = 1.0;
  // Disutility per SEK of markup paid over the bid.
  double theta_markup = 1.0;
  double outside_option = 0.0;

  friend bool operator==(const UserPreference&, const UserPreference&) = default;
};

struct AcceptanceDecision {
  int user_id = 0;
  double utility = 0.0;
  bool accepted = false;
};

// Total markup payment sum_t (pF - bid) * q over the user's assigned slots.
// Negative when the price cap pulled the final price below the bid.
double markup_payment(const UserOffer& offer, const UserBid& bid);

// theta_rate * R_r - theta_markup * markup_payment. The user must hold an
// operator-accepted offer with a rate; throws std::invalid_argument otherwise.
double utility(const UserOffer& offer, const UserBid& bid, const UserPreference& pref,
               const StationConfig& station);

// One decision per operator-accepted user, in offer order; accepted iff
// utility >= outside option. Preferences are matched to users by position.
// Throws MissingPreference when an accepted user has no preference entry.
std::vector<AcceptanceDecision> decide(const OperatorOffer& offer, const ProblemInstance& instance,
                                       std::span<const UserPreference> prefs);

// Independent uniform draws of both thetas on [0.5, 2.0] with outside option 0.
// User k draws from its own substream of the seed.
std::vector<UserPreference> sample_preferences(int count, std::uint64_t seed);

}  // namespace evmarket
