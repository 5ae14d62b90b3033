#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evmarket/domain.hpp"

namespace evmarket {

enum class VarKind { Binary, Integer, Continuous };

enum class Sense { LessEqual, Equal, GreaterEqual };

// Source of a constraint row. Codes are stable identifiers ("eq2" ... "eq18",
// "eq12b", "aux") shared with violation reports.
enum class ConstraintTag {
  AcceptRate,             // eq2: one rate iff accepted
  Availability,           // eq3: only declared slots
  SingleWindow,           // eq4: at most one start and one end
  WindowStart,            // eq5
  WindowEnd,              // eq6
  DemandBounds,           // eq7
  SlotCapacity,           // eq8
  ChargerCount,           // eq9
  DeliveredEnergy,        // eq10
  RateLink,               // eq11
  PriceSplit,             // eq12: at-bid or countered
  CounterCap,             // eq12b
  FinalPrice,             // eq13
  MinMargin,              // eq14
  PriceCap,               // eq15
  ReferenceFloor,         // eq16
  CounterAboveReference,  // eq17
  BidShare,               // eq18
  Aux,
};

std::string_view tag_code(ConstraintTag tag);
std::optional<ConstraintTag> tag_from_code(std::string_view code);

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;
};

struct Term {
  int var = 0;
  double coeff = 0.0;
};

struct LinearRow {
  std::string name;
  ConstraintTag tag = ConstraintTag::Aux;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

// Index arithmetic for the variable blocks emitted by build_model. Binary
// blocks come first (z, xB, xN, y, a, zs, ze), then continuous ones
// (pN, pF, q, pR). Each block is laid out user-major, then slot, then rate.
class ModelLayout {
 public:
  ModelLayout() = default;
  ModelLayout(int users, int slots, int rates);

  int num_users() const { return users_; }
  int num_slots() const { return slots_; }
  int num_rates() const { return rates_; }
  int num_variables() const { return total_; }
  int num_binaries() const { return p_counter_; }

  int z(int i, int t, int r) const { return z_ + cell(i, t, r); }
  int x_bid(int i, int t, int r) const { return x_bid_ + cell(i, t, r); }
  int x_counter(int i, int t, int r) const { return x_counter_ + cell(i, t, r); }
  int y(int i, int r) const { return y_ + i * rates_ + r; }
  int a(int i) const { return a_ + i; }
  int z_start(int i, int t) const { return z_start_ + i * slots_ + t; }
  int z_end(int i, int t) const { return z_end_ + i * slots_ + t; }
  int p_counter(int i, int t, int r) const { return p_counter_ + cell(i, t, r); }
  int p_final(int i, int t, int r) const { return p_final_ + cell(i, t, r); }
  int q(int i, int t) const { return q_ + i * slots_ + t; }
  int p_ref(int t, int r) const { return p_ref_ + t * rates_ + r; }

 private:
  int cell(int i, int t, int r) const { return (i * slots_ + t) * rates_ + r; }

  int users_ = 0, slots_ = 0, rates_ = 0;
  int z_ = 0, x_bid_ = 0, x_counter_ = 0, y_ = 0, a_ = 0, z_start_ = 0, z_end_ = 0;
  int p_counter_ = 0, p_final_ = 0, q_ = 0, p_ref_ = 0, total_ = 0;
};

// Solver-agnostic MILP. The objective is always maximized.
struct ModelDescription {
  ModelLayout layout;
  std::vector<Variable> variables;
  std::vector<LinearRow> constraints;
  std::vector<Term> objective;

  int count(VarKind kind) const;
  std::optional<int> find_variable(std::string_view name) const;
  // Rows carrying the tag, in emission order.
  std::vector<const LinearRow*> rows_tagged(ConstraintTag tag) const;
};

// Translates a validated instance into the operator's pricing-and-scheduling
// MILP. Throws InvalidInstance if validate_instance reports violations.
ModelDescription build_model(const ProblemInstance& instance);

// Appends one binary per feasible charging window, w_i_r_s_n for user i on
// rate r starting at slot s for n slots, with aux rows tying z to the windows
// that cover it. Every feasible point of the base model maps to exactly one
// window choice, so the optimum is unchanged; the LP relaxation becomes much
// tighter. Base variables keep their indices.
void add_window_columns(ModelDescription& model, const ProblemInstance& instance);

// Appends one binary per (slot count n, at-bid count k) a user could take on
// a rate, u_i_r_n_k, tied to y, to the user's z cells and to their xB cells.
// Each feasible point selects exactly one, so the optimum is unchanged.
void add_count_columns(ModelDescription& model, const ProblemInstance& instance);

// Appends an integer column K with sum(xN) <= K <= (1 - gamma) * sum(z), the
// whole number of countered slots the bid share allows. Branching on K
// settles the rounding of the share row at once.
void add_counter_budget(ModelDescription& model, const ProblemInstance& instance);

// All three; this is the model run_scenario hands to the backend.
void add_solver_extensions(ModelDescription& model, const ProblemInstance& instance);

// Left-hand side of a row evaluated at a point.
double row_activity(const LinearRow& row, const std::vector<double>& values);
double objective_value(const ModelDescription& model, const std::vector<double>& values);

// Largest violation of any row or variable bound at the point.
double max_violation(const ModelDescription& model, const std::vector<double>& values);

// CPLEX LP text format.
void write_lp(const ModelDescription& model, std::ostream& out);
std::string to_lp_string(const ModelDescription& model);

}  // namespace evmarket
