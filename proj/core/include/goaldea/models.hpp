#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goaldea/dea.hpp"
#include "goaldea/domain.hpp"
#include "goaldea/simplex.hpp"
#include "goaldea/sos_bb.hpp"

namespace goaldea::models {

/// Slack allowed on the first-stage objective when the omitted term is
/// minimized at alpha = 0 or alpha = 1.
inline constexpr double kStageTwoSlack = 1e-9;

/// Which formulation is assembled.
///  - NonOrientedBasic: goals on every variable, no fixed variables.
///  - OutputOrientedBasic: goals on outputs only, every input held at actuals.
///  - General: discretionary and fixed variables of either side; covers
///    every ModelKind.
enum class Formulation { Automatic, NonOrientedBasic, OutputOrientedBasic, General };

const char* to_string(Formulation formulation) noexcept;

/// Column positions of the model variables. -1 where absent.
struct ModelLayout {
  std::vector<std::size_t> reference;   ///< dataset index per reference DMU (E)
  std::vector<std::size_t> lambda;      ///< per reference DMU
  std::vector<std::size_t> gap;         ///< d_j per reference DMU
  std::vector<std::size_t> price;       ///< v_k (inputs) or u_k (outputs) per variable
  std::size_t intercept = 0;            ///< u_0
  std::vector<std::ptrdiff_t> dev_plus, dev_minus;    ///< actual deviations (discretionary)
  std::vector<std::ptrdiff_t> goal_plus, goal_minus;  ///< goal deviations (discretionary)
  std::vector<std::ptrdiff_t> fixed_slack;            ///< nonnegative slack (fixed)
};

struct BuiltModel {
  lp::LinearProgram program;
  sos::PairList pairs;
  Formulation formulation = Formulation::General;
  std::vector<Role> roles;
  ModelLayout layout;
  /// Objective rows of the two deviation terms (without alpha weights).
  std::vector<double> actual_terms;
  std::vector<double> goal_terms;
};

/// Assemble the benchmarking program for `dmu`. Rows are expressed in units
/// of the DMU's actual levels, so every deviation coefficient is 1.
/// Throws std::invalid_argument when the formulation does not fit the kind
/// or the goals do not cover the discretionary variables.
BuiltModel build_model(ModelKind kind, const dea::Technology& technology, std::string_view dmu,
                       const GoalVector& goals, double alpha,
                       Formulation formulation = Formulation::Automatic);

struct DeviationBundle {
  /// x0 - target for inputs, target - y0 for outputs; every variable.
  std::vector<double> actual;
  /// goal - target for inputs, target - goal for outputs; goal variables only.
  std::vector<std::optional<double>> goal;

  friend bool operator==(const DeviationBundle&, const DeviationBundle&) = default;
};

struct ReferenceWeight {
  std::string dmu;
  double lambda = 0.0;

  friend bool operator==(const ReferenceWeight&, const ReferenceWeight&) = default;
};

struct BenchmarkResult {
  std::string dmu;
  double alpha = 1.0;
  ModelKind kind = ModelKind::NonOriented;
  std::vector<double> targets;                ///< every variable, schema order
  std::vector<ReferenceWeight> reference_set;  ///< positive weights, E order
  DeviationBundle deviations;
  double d_actual = 0.0;
  double d_goal = 0.0;
  double objective = 0.0;
  bool stage2_applied = false;
  std::size_t nodes = 0;

  friend bool operator==(const BenchmarkResult&, const BenchmarkResult&) = default;
};

struct SolveOptions {
  std::size_t node_limit = 1'000'000;
  Formulation formulation = Formulation::Automatic;
};

/// Weighted L1 distance over the discretionary variables, normalized by actuals.
double actual_distance(const std::vector<Role>& roles, const std::vector<double>& actual,
                       const std::vector<double>& target);
double goal_distance(const std::vector<Role>& roles, const std::vector<double>& actual,
                     const GoalVector& goals, const std::vector<double>& target);

/// Convert a solution of `model` into a result (targets from the lambdas).
BenchmarkResult extract_result(const BuiltModel& model, const dea::Technology& technology,
                               std::string_view dmu, const GoalVector& goals, ModelKind kind,
                               double alpha, const std::vector<double>& values);

/// Globally optimal goal-adjusted targets. At alpha 0 and 1 the omitted term
/// is minimized in a second stage with the first-stage optimum held fixed.
/// Throws SolverError (infeasible model) or NodeLimitExceeded.
BenchmarkResult solve_benchmark(ModelKind kind, const dea::Technology& technology,
                                std::string_view dmu, const GoalVector& goals, double alpha,
                                const SolveOptions& options = {});

struct SweepEntry {
  double alpha = 0.0;
  std::optional<BenchmarkResult> result;
  std::string error;  ///< set when result is empty

  friend bool operator==(const SweepEntry&, const SweepEntry&) = default;
};

std::vector<SweepEntry> sweep_alpha_grid(ModelKind kind, const dea::Technology& technology,
                                         std::string_view dmu, const GoalVector& goals,
                                         const AlphaGrid& grid, const SolveOptions& options = {});

/// Column factors dividing each variable by its largest observed level.
std::vector<double> conditioning_factors(const Dataset& dataset);
Dataset rescale(const Dataset& dataset, const std::vector<double>& factors);
GoalSet rescale(const GoalSet& goals, const VariableSchema& schema,
                const std::vector<double>& factors);
/// Maps a result computed on the rescaled data back to original units.
BenchmarkResult restore_units(BenchmarkResult result, const std::vector<double>& factors);

}  // namespace goaldea::models
