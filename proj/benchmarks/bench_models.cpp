#include <benchmark/benchmark.h>

#include <random>

#include "generator.hpp"
#include "goaldea/dea.hpp"
#include "goaldea/models.hpp"

namespace {

using namespace goaldea;

// n = 40 with two controllable inputs, one fixed input and three outputs.
const Dataset& dataset40() {
  static const Dataset d = [] {
    std::mt19937_64 rng(41);
    return support::random_dataset(rng, {40, 2, 1, 3, 0});
  }();
  return d;
}

void BM_Classify40(benchmark::State& state) {
  for (auto _ : state) {
    auto tech = dea::classify_extreme_efficient(dataset40());
    benchmark::DoNotOptimize(tech.extreme().size());
  }
}
BENCHMARK(BM_Classify40)->Unit(benchmark::kMillisecond);

// Range 0 is the model kind, range 1 is alpha in tenths.
void BM_SolveBenchmark40(benchmark::State& state) {
  const auto kind = static_cast<ModelKind>(state.range(0));
  const double alpha = static_cast<double>(state.range(1)) / 10.0;
  const auto tech = dea::classify_extreme_efficient(dataset40());
  std::mt19937_64 rng(42);
  std::vector<GoalVector> goals;
  for (std::size_t j = 0; j < dataset40().size(); ++j) {
    goals.push_back(support::perturbed_goals(rng, dataset40(), j, kind));
  }
  std::size_t j = 0;
  for (auto _ : state) {
    auto result = models::solve_benchmark(kind, tech, dataset40().dmu_ids[j], goals[j], alpha);
    benchmark::DoNotOptimize(result.objective);
    j = (j + 1) % goals.size();
  }
}
BENCHMARK(BM_SolveBenchmark40)
    ->ArgsProduct({{0, 1, 2}, {0, 5, 10}})
    ->ArgNames({"kind", "alpha10"})
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
