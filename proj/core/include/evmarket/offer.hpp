#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evmarket/domain.hpp"
#include "evmarket/model.hpp"
#include "evmarket/solver.hpp"

namespace evmarket {

struct SlotOffer {
  int slot = 0;
  bool at_bid = true;
  double final_price = 0.0;
  // Operator's new price; zero for at-bid slots.
  double counter_price = 0.0;
  double energy_kwh = 0.0;

  friend bool operator==(const SlotOffer&, const SlotOffer&) = default;
};

struct UserOffer {
  int user_id = 0;
  bool accepted = false;
  std::optional<int> rate_index;
  // Ascending slot order.
  std::vector<SlotOffer> slots;

  int at_bid_slots() const;
  int countered_slots() const;
  double total_energy() const;

  friend bool operator==(const UserOffer&, const UserOffer&) = default;
};

struct OperatorOffer {
  std::vector<UserOffer> users;
  // Reference price per (slot, rate), slot-major. May be empty, in which case
  // the verifier uses the highest at-bid bid in each cell.
  std::vector<double> reference_prices;
  int num_rates = 0;
  double objective = 0.0;

  double reference_price(int slot, int rate) const {
    return reference_prices.at(static_cast<std::size_t>(slot * num_rates + rate));
  }

  friend bool operator==(const OperatorOffer&, const OperatorOffer&) = default;
};

// Profit recomputed from the offer: sum over assigned slots of E_r * (pF - c).
double offer_profit(const OperatorOffer& offer, const ProblemInstance& instance);

struct ViolationEntry {
  std::string tag;
  std::optional<int> user_id;
  std::optional<int> slot;
  std::optional<int> rate;
  double measured = 0.0;
  double bound = 0.0;
  std::string message;
};

struct ViolationReport {
  std::vector<ViolationEntry> entries;

  bool clean() const { return entries.empty(); }
  bool has_tag(std::string_view tag) const;
  std::string summary() const;
};

constexpr double kVerifyTolerance = 1e-6;

// Rounds binaries at 0.5 and rebuilds the per-user schedule and prices.
// Throws NonIntegralSolution if a binary sits further than the tolerance from
// {0, 1}, and SolverError if the solution carries no point.
OperatorOffer extract_offer(const ModelDescription& model, const Solution& solution,
                            const ProblemInstance& instance, double integrality_tolerance = 1e-6);

// Re-checks every constraint directly from the offer, without the model.
ViolationReport verify_offer(const OperatorOffer& offer, const ProblemInstance& instance);

}  // namespace evmarket
