#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "goaldea/domain.hpp"

namespace goaldea::dea {

inline constexpr double kClassificationTolerance = 1e-6;
inline constexpr double kEfficiencyTolerance = 1e-6;

enum class EfficiencyStatus { ExtremeEfficient, Efficient, Inefficient };

const char* to_string(EfficiencyStatus status) noexcept;

/// The VRS production possibility set spanned by a dataset, with its
/// extreme efficient units identified.
class Technology {
 public:
  const Dataset& dataset() const noexcept { return dataset_; }
  const VariableSchema& schema() const noexcept { return dataset_.schema; }

  /// Dataset indices of the extreme efficient DMUs, in dataset order.
  const std::vector<std::size_t>& extreme() const noexcept { return extreme_; }
  std::vector<std::string> extreme_ids() const;
  bool is_extreme(std::size_t dmu) const;

  EfficiencyStatus status(std::size_t dmu) const { return status_.at(dmu); }
  const std::vector<EfficiencyStatus>& statuses() const noexcept { return status_; }

  /// Index of the first identical row for each DMU.
  const std::vector<std::size_t>& representatives() const noexcept { return representatives_; }

 private:
  friend Technology classify_extreme_efficient(const Dataset& dataset);

  Dataset dataset_;
  std::vector<std::size_t> extreme_;
  std::vector<EfficiencyStatus> status_;
  std::vector<std::size_t> representatives_;
};

/// Optimal value of min { lambda_0 : sum lambda_j X_j <= X_0, sum lambda_j Y_j >= Y_0,
/// sum lambda = 1, lambda >= 0 } over the deduplicated dataset.
double self_weight(const Dataset& dataset, std::size_t dmu);

/// DMU_0 is extreme efficient iff its self weight is 1. Duplicate rows are
/// classified through their first occurrence and never enter E themselves.
Technology classify_extreme_efficient(const Dataset& dataset);

/// Feasibility of lambda >= 0, sum lambda = 1 with sum lambda_j X_j <= X and
/// sum lambda_j Y_j >= Y over all DMUs (or only `rows` when given).
bool pps_membership(const Dataset& dataset, const std::vector<double>& point);
bool pps_membership(const Dataset& dataset, std::span<const std::size_t> rows,
                    const std::vector<double>& point);

/// Membership of (goal levels on goal variables, actual levels elsewhere).
/// Throws ValidationError(MissingGoalRow).
bool goal_attainability(const Dataset& dataset, std::string_view dmu, const GoalSet& goals);

/// Optimal value of the max-slack LP over E, with slacks normalized by the
/// point's levels. Discretionary variables are tested at the point; fixed
/// ones act as bounds (inputs <=, outputs >=). nullopt when the point lies
/// outside the relevant section of the technology.
std::optional<double> efficiency_slack(const Technology& technology,
                                       const std::vector<double>& point,
                                       const std::vector<Role>& roles);

/// efficiency_slack <= 1e-6.
bool strong_efficiency_test(const Technology& technology, const std::vector<double>& point,
                            const std::vector<Role>& roles);

/// Non-oriented test over every variable.
bool strong_efficiency_test(const Technology& technology, const std::vector<double>& point);

}  // namespace goaldea::dea
