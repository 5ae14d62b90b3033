#pragma once

#include <optional>
#include <vector>

#include "evmarket/domain.hpp"
#include "evmarket/model.hpp"

namespace evmarket {

// Compact reformulation for stations where slot positions are
// interchangeable: every user with any acceptable slot accepts the same single
// run of slots, each rate has at most one charger and a constant cost over the
// run, and slot capacity covers all chargers running at once. A schedule then
// matters only through each user's rate, slot count and number of at-bid
// slots, and any choice whose slot counts fit each charger's run can be packed
// from the start of the run in user order.
struct CountOption {
  int user = 0;
  int rate = 0;
  int slots = 0;
  int at_bid = 0;
};

struct CountModel {
  // Variable k < options.size() picks options[k]; the last variable is the
  // integer number of countered slots the bid share allows.
  ModelDescription model;
  std::vector<CountOption> options;
  int first_slot = 0;
  int run_length = 0;
};

// Empty when the instance lacks the structure above.
std::optional<CountModel> build_count_model(const ProblemInstance& instance);

// Full assignment for build_model(instance) realising the chosen options:
// users packed in index order on each rate, at-bid slots first, countered
// slots at min(bid + markup, alpha * cost).
std::vector<double> expand_count_solution(const CountModel& counts, const std::vector<double>& values,
                                          const ProblemInstance& instance, const ModelDescription& full);

}  // namespace evmarket
