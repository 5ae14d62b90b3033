#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evmarket/model.hpp"

namespace evmarket {

enum class SolveStatus { Optimal, Infeasible, LimitReached };

std::string_view to_string(SolveStatus status);

struct SolverOptions {
  double time_limit_seconds = 60.0;
  int threads = 1;
  double feasibility_tolerance = 1e-6;
  double integrality_tolerance = 1e-6;
  double relative_gap = 0.0;
  int random_seed = 0;
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  // One value per model variable; empty when no incumbent exists.
  std::vector<double> values;
  double seconds = 0.0;

  bool has_incumbent() const { return !values.empty(); }
  double value(const ModelDescription& model, std::string_view name) const;
};

// Adapter around an exact MILP engine.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual Solution solve(const ModelDescription& model, const SolverOptions& options) const = 0;
};

// Registered adapter names.
std::vector<std::string> backend_names();

// Throws SolverError for unknown names.
std::unique_ptr<SolverBackend> make_backend(std::string_view name);

// Backend named by EVMARKET_SOLVER, or the default adapter when unset.
std::unique_ptr<SolverBackend> backend_from_environment();

Solution solve(const ModelDescription& model, const SolverOptions& options);

}  // namespace evmarket
