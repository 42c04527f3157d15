#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace goaldea::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Fixed solver tolerances.
inline constexpr double kPivotTolerance = 1e-9;
inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kOptimalityTolerance = 1e-7;

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status status) noexcept;

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
};

struct Constraint {
  std::vector<double> coefficients;  ///< one per variable
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

using Term = std::pair<std::size_t, double>;

struct LinearProgram {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<double> objective;  ///< one per variable
  Sense sense = Sense::Minimize;

  std::size_t num_variables() const noexcept { return variables.size(); }
  std::size_t num_constraints() const noexcept { return constraints.size(); }

  /// Appends a variable; existing rows and the objective are widened with zeros.
  std::size_t add_variable(std::string name, double lower = 0.0, double upper = kInfinity,
                           double cost = 0.0);

  /// Adds a row from sparse terms (repeated indices accumulate).
  std::size_t add_constraint(const std::vector<Term>& terms, Relation relation, double rhs,
                             std::string name = {});

  /// Throws std::invalid_argument if row widths, bounds, or numbers are malformed.
  void check() const;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> values;  ///< primal values, one per variable (empty unless Optimal)
  double objective = 0.0;

  /// Lagrange multipliers, one per constraint, for the problem
  /// "minimize s*c'x" with s = +1 (Minimize) or -1 (Maximize). Sign
  /// convention: y >= 0 on >= rows, y <= 0 on <= rows. When Infeasible the
  /// vector is a Farkas ray for the zero-objective problem instead.
  std::vector<double> duals;

  std::size_t iterations = 0;
};

/// Two-phase dense tableau simplex. Deterministic; throws NumericalBreakdown.
Solution solve(const LinearProgram& problem);

/// Largest violation of any constraint or bound by `values`.
double max_violation(const LinearProgram& problem, const std::vector<double>& values);

double objective_value(const LinearProgram& problem, const std::vector<double>& values);

/// Lagrangian dual bound g(y) = b'y + sum_j min_{l_j<=x_j<=u_j} (s c - A'y)_j x_j
/// for the minimization form. With `zero_objective` the cost vector is
/// replaced by zeros (Farkas test). Reduced costs smaller than `tolerance`
/// in magnitude against an infinite bound are treated as zero. Returns
/// -infinity when y is sign-infeasible or a reduced cost is unbounded.
double dual_bound(const LinearProgram& problem, const std::vector<double>& duals,
                  bool zero_objective = false, double tolerance = 1e-7);

struct CertificateCheck {
  bool valid = false;
  double gap = kInfinity;  ///< |primal - dual| for Optimal, -(dual bound) for Infeasible
};

/// Verifies the duals carried by `solution`: weak-duality equality for
/// Optimal, a positive Farkas bound for Infeasible.
CertificateCheck verify_certificate(const LinearProgram& problem, const Solution& solution,
                                    double tolerance = 1e-6);

}  // namespace goaldea::lp
