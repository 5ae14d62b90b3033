#include "highs_backend.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "Highs.h"
#include "evmarket/errors.hpp"

namespace evmarket {

namespace {

double to_highs_bound(double value) {
  if (std::isinf(value)) return value > 0 ? kHighsInf : -kHighsInf;
  return value;
}

HighsLp to_highs(const ModelDescription& model) {
  const auto num_cols = static_cast<HighsInt>(model.variables.size());
  const auto num_rows = static_cast<HighsInt>(model.constraints.size());

  HighsLp lp;
  lp.num_col_ = num_cols;
  lp.num_row_ = num_rows;
  lp.sense_ = ObjSense::kMaximize;
  lp.col_cost_.assign(static_cast<std::size_t>(num_cols), 0.0);
  for (const auto& term : model.objective) lp.col_cost_[static_cast<std::size_t>(term.var)] += term.coeff;

  lp.integrality_.reserve(model.variables.size());
  for (const auto& v : model.variables) {
    lp.col_lower_.push_back(to_highs_bound(v.lower));
    lp.col_upper_.push_back(to_highs_bound(v.upper));
    lp.integrality_.push_back(v.kind != VarKind::Continuous ? HighsVarType::kInteger
                                                        : HighsVarType::kContinuous);
  }

  // Transpose rows into compressed columns, merging repeated entries.
  std::vector<std::vector<std::pair<HighsInt, double>>> columns(static_cast<std::size_t>(num_cols));
  for (HighsInt k = 0; k < num_rows; ++k) {
    const auto& row = model.constraints[static_cast<std::size_t>(k)];
    std::map<int, double> merged;
    for (const auto& term : row.terms) merged[term.var] += term.coeff;
    for (const auto& [var, coeff] : merged) {
      if (coeff != 0.0) columns[static_cast<std::size_t>(var)].emplace_back(k, coeff);
    }
    switch (row.sense) {
      case Sense::LessEqual:
        lp.row_lower_.push_back(-kHighsInf);
        lp.row_upper_.push_back(row.rhs);
        break;
      case Sense::GreaterEqual:
        lp.row_lower_.push_back(row.rhs);
        lp.row_upper_.push_back(kHighsInf);
        break;
      case Sense::Equal:
        lp.row_lower_.push_back(row.rhs);
        lp.row_upper_.push_back(row.rhs);
        break;
    }
  }
  auto& matrix = lp.a_matrix_;
  matrix.format_ = MatrixFormat::kColwise;
  matrix.num_col_ = num_cols;
  matrix.num_row_ = num_rows;
  matrix.start_.assign(1, 0);
  for (const auto& column : columns) {
    for (const auto& [row, coeff] : column) {
      matrix.index_.push_back(row);
      matrix.value_.push_back(coeff);
    }
    matrix.start_.push_back(static_cast<HighsInt>(matrix.index_.size()));
  }
  return lp;
}

}  // namespace

Solution HighsBackend::solve(const ModelDescription& model, const SolverOptions& options) const {
  if (!(options.time_limit_seconds > 0.0)) throw SolverError("time limit must be positive");

  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("time_limit", options.time_limit_seconds);
  highs.setOptionValue("threads", static_cast<HighsInt>(std::max(options.threads, 1)));
  highs.setOptionValue("random_seed", static_cast<HighsInt>(options.random_seed));
  highs.setOptionValue("mip_rel_gap", options.relative_gap);
  highs.setOptionValue("mip_abs_gap", 1e-7);
  // Strong branching rarely pays off on these models: the root bound is
  // usually tight and the time goes into finding a matching schedule.
  highs.setOptionValue("mip_pscost_minreliable", 0);
  highs.setOptionValue("mip_feasibility_tolerance", options.integrality_tolerance);
  highs.setOptionValue("primal_feasibility_tolerance", std::min(options.feasibility_tolerance, 1e-7));

  const auto start = std::chrono::steady_clock::now();
  if (highs.passModel(to_highs(model)) == HighsStatus::kError) {
    throw SolverError("HiGHS rejected the model");
  }
  if (highs.run() == HighsStatus::kError) throw SolverError("HiGHS failed while solving");
  const auto elapsed = std::chrono::steady_clock::now() - start;

  Solution solution;
  solution.seconds = std::chrono::duration<double>(elapsed).count();
  const auto status = highs.getModelStatus();
  const bool has_point = highs.getInfo().primal_solution_status == kSolutionStatusFeasible;
  switch (status) {
    case HighsModelStatus::kOptimal: solution.status = SolveStatus::Optimal; break;
    case HighsModelStatus::kInfeasible:
    case HighsModelStatus::kUnboundedOrInfeasible: solution.status = SolveStatus::Infeasible; break;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kInterrupt:
    case HighsModelStatus::kMemoryLimit: solution.status = SolveStatus::LimitReached; break;
    default:
      throw SolverError("HiGHS returned status '" + highs.modelStatusToString(status) + "'");
  }
  if (has_point && solution.status != SolveStatus::Infeasible) {
    solution.values = highs.getSolution().col_value;
    solution.objective = highs.getInfo().objective_function_value;
  }
  return solution;
}

}  // namespace evmarket
