#include "goaldea/sos_bb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goaldea/errors.hpp"

namespace goaldea::sos {

namespace {

constexpr double kPruneTolerance = 1e-9;
// Objective loss accepted for trading tolerance-level complementarity for
// exact zeros.
constexpr double kPolishTolerance = 1e-6;

double min_form(const lp::LinearProgram& problem, double objective) {
  return problem.sense == lp::Sense::Minimize ? objective : -objective;
}

std::vector<double> residuals(const PairList& pairs, const std::vector<double>& values) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs.pairs) out.push_back(std::min(values[a], values[b]));
  return out;
}

std::ptrdiff_t first_violated(const PairList& pairs, const std::vector<double>& values) {
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs.pairs[p];
    if (std::min(values[a], values[b]) > kComplementarityTolerance) {
      return static_cast<std::ptrdiff_t>(p);
    }
  }
  return -1;
}

// Re-solves the incumbent with the smaller member of every pair fixed at
// zero, so near-zero members within tolerance become exact zeros.
void polish(const lp::LinearProgram& problem, const PairList& pairs, BranchSolution& best) {
  const auto& x = best.lp.values;
  bool needed = false;
  for (const auto& [a, b] : pairs.pairs) needed |= std::min(x[a], x[b]) > 0.0;
  if (!needed) return;
  lp::LinearProgram restricted = problem;
  std::vector<std::size_t> fixed = best.fixed_to_zero;
  for (const auto& [a, b] : pairs.pairs) fixed.push_back(x[b] <= x[a] ? b : a);
  for (std::size_t j : fixed) restricted.variables[j].upper = 0.0;
  auto refined = lp::solve(restricted);
  if (refined.status != lp::Status::Optimal) return;
  const double before = min_form(problem, best.lp.objective);
  const double after = min_form(problem, refined.objective);
  if (after > before + kPolishTolerance * std::max(1.0, std::abs(before))) return;
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  best.lp = std::move(refined);
  best.fixed_to_zero = std::move(fixed);
}

}  // namespace

void check_pairs(const lp::LinearProgram& problem, const PairList& pairs) {
  for (const auto& [a, b] : pairs.pairs) {
    if (a >= problem.num_variables() || b >= problem.num_variables()) {
      throw std::invalid_argument("SOS pair references an unknown variable");
    }
    if (a == b) throw std::invalid_argument("SOS pair repeats a variable");
    if (problem.variables[a].lower < 0.0 || problem.variables[b].lower < 0.0) {
      throw std::invalid_argument("SOS pair member may take negative values");
    }
  }
}

BranchSolution solve(const lp::LinearProgram& problem, const PairList& pairs,
                     const Options& options) {
  check_pairs(problem, pairs);
  BranchSolution best;
  best.lp.status = lp::Status::Infeasible;
  bool have_incumbent = false;
  double incumbent = lp::kInfinity;

  if (options.incumbent) {
    const auto& x = *options.incumbent;
    if (x.size() == problem.num_variables() &&
        lp::max_violation(problem, x) <= lp::kFeasibilityTolerance &&
        first_violated(pairs, x) < 0) {
      best.lp.status = lp::Status::Optimal;
      best.lp.values = x;
      best.lp.objective = lp::objective_value(problem, x);
      incumbent = min_form(problem, best.lp.objective);
      have_incumbent = true;
    }
  }

  std::vector<std::vector<std::size_t>> stack;
  stack.emplace_back();
  lp::LinearProgram node_problem = problem;

  while (!stack.empty()) {
    std::vector<std::size_t> fixed = std::move(stack.back());
    stack.pop_back();
    if (best.nodes >= options.node_limit) throw NodeLimitExceeded(options.node_limit);
    ++best.nodes;

    for (std::size_t j = 0; j < problem.num_variables(); ++j) {
      node_problem.variables[j].upper = problem.variables[j].upper;
    }
    for (std::size_t j : fixed) node_problem.variables[j].upper = 0.0;

    lp::Solution relaxed = lp::solve(node_problem);
    if (relaxed.status == lp::Status::Infeasible) continue;
    if (relaxed.status == lp::Status::Unbounded) {
      best.lp = std::move(relaxed);
      best.fixed_to_zero = fixed;
      best.complementarity.clear();
      return best;
    }
    const double bound = min_form(problem, relaxed.objective);
    const double margin = kPruneTolerance * std::max(1.0, std::abs(incumbent));
    if (have_incumbent && bound >= incumbent - margin) continue;

    const std::ptrdiff_t violated = first_violated(pairs, relaxed.values);
    if (violated < 0) {
      incumbent = bound;
      have_incumbent = true;
      best.lp = std::move(relaxed);
      best.fixed_to_zero = fixed;
      continue;
    }
    const auto [a, b] = pairs.pairs[static_cast<std::size_t>(violated)];
    auto fix_a = fixed;
    fix_a.push_back(a);
    fixed.push_back(b);
    stack.push_back(std::move(fix_a));  // explored second
    stack.push_back(std::move(fixed));  // explored first
  }

  if (have_incumbent) {
    polish(problem, pairs, best);
    std::sort(best.fixed_to_zero.begin(), best.fixed_to_zero.end());
    best.complementarity = residuals(pairs, best.lp.values);
  }
  return best;
}

}  // namespace goaldea::sos
