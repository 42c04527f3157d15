#include <benchmark/benchmark.h>

#include <random>

#include "goaldea/simplex.hpp"

namespace {

using namespace goaldea;

// Feasible by construction: rows are <= with rhs above a*x for a known x.
lp::LinearProgram random_program(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(0.0, 1.0);
  lp::LinearProgram problem;
  problem.sense = lp::Sense::Maximize;
  for (std::size_t j = 0; j < cols; ++j) {
    problem.add_variable("x" + std::to_string(j), 0.0, lp::kInfinity, coef(rng));
  }
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<lp::Term> terms;
    double lhs = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double a = coef(rng);
      terms.emplace_back(j, a);
      lhs += a;
    }
    problem.add_constraint(terms, lp::Relation::LessEqual, lhs * (1.0 + coef(rng)));
  }
  return problem;
}

void BM_SimplexDense(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto problem = random_program(size, 2 * size, 7);
  for (auto _ : state) {
    auto solution = lp::solve(problem);
    benchmark::DoNotOptimize(solution.objective);
  }
}
BENCHMARK(BM_SimplexDense)->Arg(10)->Arg(40)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
