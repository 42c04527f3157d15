#include "goaldea/dea.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "goaldea/simplex.hpp"

namespace goaldea::dea {

const char* to_string(EfficiencyStatus status) noexcept {
  switch (status) {
    case EfficiencyStatus::ExtremeEfficient: return "extreme_efficient";
    case EfficiencyStatus::Efficient: return "efficient";
    case EfficiencyStatus::Inefficient: return "inefficient";
  }
  return "unknown";
}

std::vector<std::string> Technology::extreme_ids() const {
  std::vector<std::string> ids;
  ids.reserve(extreme_.size());
  for (std::size_t j : extreme_) ids.push_back(dataset_.dmu_ids[j]);
  return ids;
}

bool Technology::is_extreme(std::size_t dmu) const {
  return std::binary_search(extreme_.begin(), extreme_.end(), dmu);
}

namespace {

double normalizer(double level) { return level > 0.0 ? level : 1.0; }

std::vector<std::size_t> unique_rows(const std::vector<std::size_t>& representatives) {
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < representatives.size(); ++j) {
    if (representatives[j] == j) rows.push_back(j);
  }
  return rows;
}

// Envelopment rows sum_j lambda_j z_kj (<= or >=) point_k, scaled by point_k.
void add_envelopment_rows(lp::LinearProgram& problem, const Dataset& dataset,
                          std::span<const std::size_t> rows, const std::vector<double>& point,
                          std::size_t first_lambda) {
  const auto& schema = dataset.schema;
  for (std::size_t k = 0; k < schema.size(); ++k) {
    const double scale = normalizer(point[k]);
    std::vector<lp::Term> terms;
    terms.reserve(rows.size());
    for (std::size_t q = 0; q < rows.size(); ++q) {
      terms.emplace_back(first_lambda + q, dataset.values[rows[q]][k] / scale);
    }
    problem.add_constraint(terms,
                           schema[k].is_input() ? lp::Relation::LessEqual
                                                : lp::Relation::GreaterEqual,
                           point[k] / scale, schema[k].name);
  }
}

void add_convexity(lp::LinearProgram& problem, std::size_t first_lambda, std::size_t count) {
  std::vector<lp::Term> terms;
  for (std::size_t q = 0; q < count; ++q) terms.emplace_back(first_lambda + q, 1.0);
  problem.add_constraint(terms, lp::Relation::Equal, 1.0, "convexity");
}

}  // namespace

double self_weight(const Dataset& dataset, std::size_t dmu) {
  const auto reps = duplicate_representatives(dataset);
  const auto rows = unique_rows(reps);
  const std::size_t self = reps.at(dmu);
  lp::LinearProgram problem;
  for (std::size_t j : rows) {
    problem.add_variable("lambda_" + dataset.dmu_ids[j], 0.0, lp::kInfinity,
                         j == self ? 1.0 : 0.0);
  }
  add_envelopment_rows(problem, dataset, rows, dataset.values[dmu], 0);
  add_convexity(problem, 0, rows.size());
  const auto solution = lp::solve(problem);
  if (solution.status != lp::Status::Optimal) {
    throw SolverError("classification LP for '" + dataset.dmu_ids[dmu] + "' is " +
                      lp::to_string(solution.status));
  }
  return solution.objective;
}

Technology classify_extreme_efficient(const Dataset& dataset) {
  Technology tech;
  tech.dataset_ = dataset;
  tech.representatives_ = duplicate_representatives(dataset);
  tech.status_.assign(dataset.size(), EfficiencyStatus::Inefficient);
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    if (tech.representatives_[j] != j) continue;
    if (std::abs(self_weight(dataset, j) - 1.0) < kClassificationTolerance) {
      tech.extreme_.push_back(j);
    }
  }
  if (tech.extreme_.empty()) {
    throw SolverError("no extreme efficient DMU found; the technology is degenerate");
  }
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    const std::size_t rep = tech.representatives_[j];
    if (rep != j) continue;
    if (tech.is_extreme(j)) {
      tech.status_[j] = EfficiencyStatus::ExtremeEfficient;
    } else if (strong_efficiency_test(tech, dataset.values[j])) {
      tech.status_[j] = EfficiencyStatus::Efficient;
    }
  }
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    const std::size_t rep = tech.representatives_[j];
    if (rep == j) continue;
    // A copy of an extreme point is efficient but never itself a vertex of E.
    tech.status_[j] = tech.status_[rep] == EfficiencyStatus::Inefficient
                          ? EfficiencyStatus::Inefficient
                          : EfficiencyStatus::Efficient;
  }
  return tech;
}

bool pps_membership(const Dataset& dataset, std::span<const std::size_t> rows,
                    const std::vector<double>& point) {
  if (point.size() != dataset.schema.size()) {
    throw std::invalid_argument("point dimension differs from schema");
  }
  lp::LinearProgram problem;
  for (std::size_t j : rows) problem.add_variable("lambda_" + dataset.dmu_ids[j]);
  add_envelopment_rows(problem, dataset, rows, point, 0);
  add_convexity(problem, 0, rows.size());
  return lp::solve(problem).status == lp::Status::Optimal;
}

bool pps_membership(const Dataset& dataset, const std::vector<double>& point) {
  std::vector<std::size_t> rows(dataset.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return pps_membership(dataset, rows, point);
}

bool goal_attainability(const Dataset& dataset, std::string_view dmu, const GoalSet& goals) {
  const auto j = dataset.index_of(dmu);
  if (!j) {
    throw ValidationError({{IssueCode::UnknownDmu, "unknown DMU '" + std::string(dmu) + "'"}});
  }
  const GoalVector g = goal_vector_for(dataset.schema, goals, dmu);
  return pps_membership(dataset, composite_point(dataset.values[*j], g));
}

std::optional<double> efficiency_slack(const Technology& technology,
                                       const std::vector<double>& point,
                                       const std::vector<Role>& roles) {
  const auto& dataset = technology.dataset();
  const auto& schema = dataset.schema;
  const auto& E = technology.extreme();
  if (point.size() != schema.size() || roles.size() != schema.size()) {
    throw std::invalid_argument("point or roles dimension differs from schema");
  }
  lp::LinearProgram problem;
  problem.sense = lp::Sense::Maximize;
  for (std::size_t j : E) problem.add_variable("lambda_" + dataset.dmu_ids[j]);
  std::vector<std::ptrdiff_t> slack(schema.size(), -1);
  for (std::size_t k = 0; k < schema.size(); ++k) {
    if (is_discretionary(roles[k])) {
      slack[k] = static_cast<std::ptrdiff_t>(
          problem.add_variable("slack_" + schema[k].name, 0.0, lp::kInfinity, 1.0));
    }
  }
  for (std::size_t k = 0; k < schema.size(); ++k) {
    const double scale = normalizer(point[k]);
    std::vector<lp::Term> terms;
    for (std::size_t q = 0; q < E.size(); ++q) {
      terms.emplace_back(q, dataset.values[E[q]][k] / scale);
    }
    const double rhs = point[k] / scale;
    switch (roles[k]) {
      case Role::DiscretionaryInput:
        terms.emplace_back(static_cast<std::size_t>(slack[k]), 1.0);
        problem.add_constraint(terms, lp::Relation::Equal, rhs, schema[k].name);
        break;
      case Role::DiscretionaryOutput:
        terms.emplace_back(static_cast<std::size_t>(slack[k]), -1.0);
        problem.add_constraint(terms, lp::Relation::Equal, rhs, schema[k].name);
        break;
      case Role::FixedInput:
        problem.add_constraint(terms, lp::Relation::LessEqual, rhs, schema[k].name);
        break;
      case Role::FixedOutput:
        problem.add_constraint(terms, lp::Relation::GreaterEqual, rhs, schema[k].name);
        break;
    }
  }
  add_convexity(problem, 0, E.size());
  const auto solution = lp::solve(problem);
  if (solution.status == lp::Status::Infeasible) return std::nullopt;
  if (solution.status == lp::Status::Unbounded) {
    throw SolverError("max-slack LP unbounded; the technology is malformed");
  }
  return solution.objective;
}

bool strong_efficiency_test(const Technology& technology, const std::vector<double>& point,
                            const std::vector<Role>& roles) {
  const auto slack = efficiency_slack(technology, point, roles);
  return slack && *slack <= kEfficiencyTolerance;
}

bool strong_efficiency_test(const Technology& technology, const std::vector<double>& point) {
  std::vector<Role> roles;
  for (const auto& e : technology.schema().entries()) {
    roles.push_back(e.is_input() ? Role::DiscretionaryInput : Role::DiscretionaryOutput);
  }
  return strong_efficiency_test(technology, point, roles);
}

}  // namespace goaldea::dea
