#pragma once

#include "evmarket/solver.hpp"

namespace evmarket {

class HighsBackend final : public SolverBackend {
 public:
  std::string name() const override { return "highs"; }
  Solution solve(const ModelDescription& model, const SolverOptions& options) const override;
};

}  // namespace evmarket
