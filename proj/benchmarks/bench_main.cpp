#include <benchmark/benchmark.h>

#include <random>

#include "evmarket/count_model.hpp"
#include "evmarket/metrics.hpp"
#include "evmarket/model.hpp"
#include "evmarket/oracle.hpp"
#include "evmarket/scenario.hpp"
#include "evmarket/solver.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace evmarket;

ProblemInstance baseline(int users, double gamma, std::initializer_list<double> rates_kw) {
  auto spec = find_preset("multi-rate").scenario;
  spec.user_count = users;
  spec.policy.gamma = gamma;
  spec.station = standard_station(48, std::vector<double>(rates_kw));
  return generate_instance(spec);
}

void BM_BuildModel(benchmark::State& state) {
  const auto inst = baseline(static_cast<int>(state.range(0)), 0.4, {22.0, 50.0, 100.0});
  for (auto _ : state) benchmark::DoNotOptimize(build_model(inst));
  state.SetLabel(std::to_string(build_model(inst).variables.size()) + " columns");
}
BENCHMARK(BM_BuildModel)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  std::mt19937_64 gen(1);
  std::vector<ProblemInstance> cases;
  for (int k = 0; k < 20; ++k) cases.push_back(testing::random_tiny(gen, 0.5));
  for (auto _ : state) {
    for (const auto& inst : cases) benchmark::DoNotOptimize(exhaustive_oracle(inst));
  }
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);

void BM_SolveTiny(benchmark::State& state) {
  std::mt19937_64 gen(2);
  std::vector<ModelDescription> models;
  for (int k = 0; k < 20; ++k) models.push_back(build_model(testing::random_tiny(gen, 0.5)));
  const auto backend = make_backend("highs");
  for (auto _ : state) {
    for (const auto& m : models) benchmark::DoNotOptimize(backend->solve(m, SolverOptions{}));
  }
}
BENCHMARK(BM_SolveTiny)->Unit(benchmark::kMillisecond);

void BM_CountModelScenario(benchmark::State& state) {
  const auto inst = baseline(static_cast<int>(state.range(0)), 0.8, {22.0, 50.0, 100.0});
  const auto prefs = sample_preferences(inst.num_users(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(inst, prefs, RunOptions{}));
}
BENCHMARK(BM_CountModelScenario)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Gini(benchmark::State& state) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> price(2.0, 6.0);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (auto& x : v) x = price(gen);
  for (auto _ : state) benchmark::DoNotOptimize(gini(v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gini)->RangeMultiplier(8)->Range(8, 32768)->Complexity(benchmark::oNLogN);

}  // namespace

BENCHMARK_MAIN();
