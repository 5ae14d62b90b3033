#pragma once

#include "evmarket/domain.hpp"
#include "evmarket/offer.hpp"

namespace evmarket {

// Largest users * slots * rates product the oracle will enumerate.
constexpr int kOracleCellBudget = 16;

// Brute-force optimum for tiny instances, independent of any MILP engine.
//
// For every user the oracle enumerates rejection and every (rate, contiguous
// window, at-bid/countered labelling) inside the acceptable slots, then every
// combination across users. Once the binaries are fixed the prices decouple:
// an at-bid slot costs the bid and needs (1 + eps) c <= bid <= alpha c; a
// countered slot takes min(bid + delta, alpha c) and needs that to reach
// max((1 + eps) c, highest at-bid bid in the same (slot, rate) cell).
//
// Ties keep the first pattern found (users in order, rejection first).
// Throws OracleBudgetExceeded over budget and InvalidInstance if invalid.
OperatorOffer exhaustive_oracle(const ProblemInstance& instance);

}  // namespace evmarket
