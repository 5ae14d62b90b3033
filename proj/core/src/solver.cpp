#include "evmarket/solver.hpp"

#include <cstdlib>

#include "evmarket/errors.hpp"
#include "highs_backend.hpp"

namespace evmarket {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::LimitReached: return "limit-reached";
  }
  return "unknown";
}

double Solution::value(const ModelDescription& model, std::string_view name) const {
  const auto index = model.find_variable(name);
  if (!index) throw SolverError("unknown variable '" + std::string(name) + "'");
  return values.at(static_cast<std::size_t>(*index));
}

std::vector<std::string> backend_names() { return {"highs"}; }

std::unique_ptr<SolverBackend> make_backend(std::string_view name) {
  if (name == "highs") return std::make_unique<HighsBackend>();
  throw SolverError("unknown solver backend '" + std::string(name) + "'");
}

std::unique_ptr<SolverBackend> backend_from_environment() {
  const char* selected = std::getenv("EVMARKET_SOLVER");
  if (selected == nullptr || *selected == '\0') return make_backend("highs");
  return make_backend(selected);
}

Solution solve(const ModelDescription& model, const SolverOptions& options) {
  return backend_from_environment()->solve(model, options);
}

}  // namespace evmarket
