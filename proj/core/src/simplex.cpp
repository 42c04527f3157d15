#include "goaldea/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goaldea/errors.hpp"

namespace goaldea::lp {

const char* to_string(Status status) noexcept {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

std::size_t LinearProgram::add_variable(std::string name, double lower, double upper,
                                        double cost) {
  variables.push_back({std::move(name), lower, upper});
  objective.resize(variables.size(), 0.0);
  objective.back() = cost;
  for (auto& row : constraints) row.coefficients.resize(variables.size(), 0.0);
  return variables.size() - 1;
}

std::size_t LinearProgram::add_constraint(const std::vector<Term>& terms, Relation relation,
                                          double rhs, std::string name) {
  Constraint row;
  row.coefficients.assign(variables.size(), 0.0);
  for (const auto& [index, value] : terms) {
    if (index >= variables.size()) throw std::out_of_range("constraint term index");
    row.coefficients[index] += value;
  }
  row.relation = relation;
  row.rhs = rhs;
  row.name = std::move(name);
  constraints.push_back(std::move(row));
  return constraints.size() - 1;
}

void LinearProgram::check() const {
  if (objective.size() != variables.size()) {
    throw std::invalid_argument("objective width differs from variable count");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite objective coefficient");
  }
  for (const auto& v : variables) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower == kInfinity ||
        v.upper == -kInfinity) {
      throw std::invalid_argument("malformed bounds on variable '" + v.name + "'");
    }
  }
  for (const auto& row : constraints) {
    if (row.coefficients.size() != variables.size()) {
      throw std::invalid_argument("constraint row width differs from variable count");
    }
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite right-hand side");
    for (double a : row.coefficients) {
      if (!std::isfinite(a)) throw std::invalid_argument("non-finite constraint coefficient");
    }
  }
}

namespace {

constexpr std::size_t kDegenerateBeforeBland = 50;
constexpr double kTieTolerance = 1e-12;

// x_j = offset + sign * x'[pos] - x'[neg]
struct ColumnMap {
  std::ptrdiff_t pos = -1;
  std::ptrdiff_t neg = -1;
  double offset = 0.0;
  double sign = 1.0;
};

struct StdRow {
  std::vector<double> a;
  Relation relation;
  double rhs;
  double scale = 1.0;   // original row = stored row * scale * flip
  double flip = 1.0;
  std::ptrdiff_t origin = -1;  // index of the original constraint, -1 for bound rows
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), width_(cols + 1), data_((rows + 1) * (cols + 1), 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * width_ + c]; }
  double& rhs(std::size_t r) { return data_[r * width_ + cols_]; }
  double rhs(std::size_t r) const { return data_[r * width_ + cols_]; }
  double& cost(std::size_t c) { return data_[rows_ * width_ + c]; }
  double cost(std::size_t c) const { return data_[rows_ * width_ + c]; }
  double& neg_objective() { return data_[rows_ * width_ + cols_]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = &data_[pr * width_];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &data_[r * width_];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) {
        if (prow[c] != 0.0) row[c] -= f * prow[c];
      }
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Rebuilds the reduced-cost row for `costs` against the current basis.
  void price(const std::vector<double>& costs) {
    for (std::size_t c = 0; c < cols_; ++c) cost(c) = costs[c];
    neg_objective() = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = costs[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c < cols_; ++c) cost(c) -= cb * at(r, c);
      neg_objective() -= cb * rhs(r);
    }
    for (std::size_t r = 0; r < rows_; ++r) cost(basis_[r]) = 0.0;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { Optimal, Unbounded };

PhaseResult run_phase(Tableau& t, const std::vector<char>& allowed, std::size_t& iterations,
                      std::size_t iteration_limit) {
  bool bland = false;
  std::size_t degenerate_run = 0;
  for (;;) {
    std::ptrdiff_t enter = -1;
    double best = -kOptimalityTolerance;
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (!allowed[c]) continue;
      const double r = t.cost(c);
      if (bland) {
        if (r < -kOptimalityTolerance) {
          enter = static_cast<std::ptrdiff_t>(c);
          break;
        }
      } else if (r < best - kTieTolerance * std::max(1.0, std::abs(best))) {
        best = r;
        enter = static_cast<std::ptrdiff_t>(c);
      }
    }
    if (enter < 0) return PhaseResult::Optimal;
    const auto e = static_cast<std::size_t>(enter);

    std::ptrdiff_t leave = -1;
    double best_ratio = kInfinity;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, e);
      if (a <= kPivotTolerance) continue;
      const double ratio = std::max(t.rhs(r), 0.0) / a;
      if (leave < 0 || ratio < best_ratio - kTieTolerance * std::max(1.0, best_ratio)) {
        best_ratio = ratio;
        leave = static_cast<std::ptrdiff_t>(r);
      } else if (ratio <= best_ratio + kTieTolerance * std::max(1.0, best_ratio)) {
        const auto l = static_cast<std::size_t>(leave);
        const bool better = bland ? t.basis()[r] < t.basis()[l] : a > t.at(l, e);
        if (better) leave = static_cast<std::ptrdiff_t>(r);
      }
    }
    if (leave < 0) return PhaseResult::Unbounded;

    if (++iterations > iteration_limit) {
      throw NumericalBreakdown("simplex iteration limit reached (cycling or ill-conditioning)");
    }
    if (best_ratio <= kTieTolerance) {
      if (++degenerate_run >= kDegenerateBeforeBland) bland = true;
    } else {
      degenerate_run = 0;
    }
    t.pivot(static_cast<std::size_t>(leave), e);
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (!std::isfinite(t.rhs(r))) throw NumericalBreakdown("non-finite tableau entry");
    }
  }
}

// Recomputes the basic values from the equilibrated rows by Gaussian
// elimination on the final basis, removing drift accumulated over pivots.
// Keeps the tableau values when the basis matrix is numerically singular
// or the recomputed point is not primal feasible.
void refine_basic_values(const std::vector<StdRow>& rows, const std::vector<std::ptrdiff_t>& slack_col,
                         const std::vector<std::ptrdiff_t>& art_col,
                         const std::vector<std::size_t>& basis, std::vector<double>& xstd) {
  const std::size_t m = rows.size();
  if (m == 0) return;
  const std::size_t structural = rows.front().a.size();
  std::vector<double> a(m * m, 0.0);
  std::vector<double> b(m);
  for (std::size_t r = 0; r < m; ++r) {
    b[r] = rows[r].rhs;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t c = basis[k];
      double v = 0.0;
      if (c < structural) {
        v = rows[r].a[c];
      } else if (slack_col[r] == static_cast<std::ptrdiff_t>(c)) {
        v = rows[r].relation == Relation::LessEqual ? 1.0 : -1.0;
      } else if (art_col[r] == static_cast<std::ptrdiff_t>(c)) {
        v = 1.0;
      }
      a[r * m + k] = v;
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < m; ++r) {
      if (std::abs(a[r * m + k]) > std::abs(a[pivot * m + k])) pivot = r;
    }
    if (std::abs(a[pivot * m + k]) < 1e-12) return;
    if (pivot != k) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[k * m + c], a[pivot * m + c]);
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t r = k + 1; r < m; ++r) {
      const double f = a[r * m + k] / a[k * m + k];
      if (f == 0.0) continue;
      for (std::size_t c = k; c < m; ++c) a[r * m + c] -= f * a[k * m + c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(m);
  for (std::size_t k = m; k-- > 0;) {
    double v = b[k];
    for (std::size_t c = k + 1; c < m; ++c) v -= a[k * m + c] * x[c];
    x[k] = v / a[k * m + k];
    if (!std::isfinite(x[k]) || x[k] < -kFeasibilityTolerance) return;
  }
  for (std::size_t k = 0; k < m; ++k) xstd[basis[k]] = std::max(x[k], 0.0);
}

}  // namespace

Solution solve(const LinearProgram& problem) {
  problem.check();
  const std::size_t n = problem.num_variables();
  const std::size_t m = problem.num_constraints();
  const double sense = problem.sense == Sense::Minimize ? 1.0 : -1.0;

  Solution out;
  out.duals.assign(m, 0.0);

  // Column mapping onto nonnegative standard-form columns.
  std::vector<ColumnMap> map(n);
  std::size_t ncols = 0;
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound)
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = problem.variables[j];
    if (v.lower > v.upper) {
      out.status = Status::Infeasible;
      out.duals.clear();
      return out;
    }
    auto& cm = map[j];
    if (v.lower == v.upper) {
      cm.offset = v.lower;
    } else if (std::isfinite(v.lower)) {
      cm.offset = v.lower;
      cm.pos = static_cast<std::ptrdiff_t>(ncols++);
      if (std::isfinite(v.upper)) upper_rows.emplace_back(cm.pos, v.upper - v.lower);
    } else if (std::isfinite(v.upper)) {
      cm.offset = v.upper;
      cm.sign = -1.0;
      cm.pos = static_cast<std::ptrdiff_t>(ncols++);
    } else {
      cm.pos = static_cast<std::ptrdiff_t>(ncols++);
      cm.neg = static_cast<std::ptrdiff_t>(ncols++);
    }
  }

  std::vector<StdRow> rows;
  rows.reserve(m + upper_rows.size());
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    StdRow row{std::vector<double>(ncols, 0.0), c.relation, c.rhs};
    row.origin = static_cast<std::ptrdiff_t>(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = c.coefficients[j];
      if (a == 0.0) continue;
      const auto& cm = map[j];
      row.rhs -= a * cm.offset;
      if (cm.pos >= 0) row.a[static_cast<std::size_t>(cm.pos)] += a * cm.sign;
      if (cm.neg >= 0) row.a[static_cast<std::size_t>(cm.neg)] -= a;
    }
    rows.push_back(std::move(row));
  }
  for (const auto& [col, bound] : upper_rows) {
    StdRow row{std::vector<double>(ncols, 0.0), Relation::LessEqual, bound};
    row.a[col] = 1.0;
    rows.push_back(std::move(row));
  }

  // Equilibrate, drop empty rows, make right-hand sides nonnegative.
  std::vector<StdRow> kept;
  kept.reserve(rows.size());
  for (auto& row : rows) {
    double scale = 0.0;
    for (double a : row.a) scale = std::max(scale, std::abs(a));
    if (scale == 0.0) {
      const bool ok = (row.relation == Relation::LessEqual && row.rhs >= -kFeasibilityTolerance) ||
                      (row.relation == Relation::GreaterEqual && row.rhs <= kFeasibilityTolerance) ||
                      (row.relation == Relation::Equal && std::abs(row.rhs) <= kFeasibilityTolerance);
      if (!ok) {
        out.status = Status::Infeasible;
        out.duals.assign(m, 0.0);
        if (row.origin >= 0) out.duals[static_cast<std::size_t>(row.origin)] = row.rhs > 0 ? 1.0 : -1.0;
        return out;
      }
      continue;
    }
    for (double& a : row.a) a /= scale;
    row.rhs /= scale;
    row.scale = scale;
    if (row.rhs < 0.0) {
      for (double& a : row.a) a = -a;
      row.rhs = -row.rhs;
      row.flip = -1.0;
      if (row.relation == Relation::LessEqual) {
        row.relation = Relation::GreaterEqual;
      } else if (row.relation == Relation::GreaterEqual) {
        row.relation = Relation::LessEqual;
      }
    }
    kept.push_back(std::move(row));
  }

  // Column layout: structural | slack or surplus | artificial.
  const std::size_t mr = kept.size();
  std::vector<std::ptrdiff_t> slack_col(mr, -1), art_col(mr, -1), unit_col(mr, -1);
  std::size_t total = ncols;
  for (std::size_t r = 0; r < mr; ++r) {
    if (kept[r].relation != Relation::Equal) slack_col[r] = static_cast<std::ptrdiff_t>(total++);
  }
  const std::size_t first_art = total;
  for (std::size_t r = 0; r < mr; ++r) {
    if (kept[r].relation != Relation::LessEqual) art_col[r] = static_cast<std::ptrdiff_t>(total++);
    unit_col[r] = kept[r].relation == Relation::LessEqual ? slack_col[r] : art_col[r];
  }

  Tableau t(mr, total);
  for (std::size_t r = 0; r < mr; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) t.at(r, c) = kept[r].a[c];
    if (slack_col[r] >= 0) {
      t.at(r, static_cast<std::size_t>(slack_col[r])) =
          kept[r].relation == Relation::LessEqual ? 1.0 : -1.0;
    }
    if (art_col[r] >= 0) t.at(r, static_cast<std::size_t>(art_col[r])) = 1.0;
    t.rhs(r) = kept[r].rhs;
    t.basis()[r] = static_cast<std::size_t>(unit_col[r]);
  }

  const std::size_t iteration_limit = 1000 + 50 * (mr + total);
  std::vector<char> allowed(total, 1);

  auto map_duals = [&](const std::vector<double>& costs) {
    std::vector<double> y(m, 0.0);
    for (std::size_t r = 0; r < mr; ++r) {
      if (kept[r].origin < 0) continue;
      const auto u = static_cast<std::size_t>(unit_col[r]);
      const double ystd = costs[u] - t.cost(u);
      y[static_cast<std::size_t>(kept[r].origin)] = ystd * kept[r].flip / kept[r].scale;
    }
    return y;
  };

  // Phase 1.
  if (first_art < total) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t c = first_art; c < total; ++c) phase1[c] = 1.0;
    t.price(phase1);
    run_phase(t, allowed, out.iterations, iteration_limit);
    const double infeasibility = -t.neg_objective();
    if (infeasibility > kFeasibilityTolerance) {
      out.status = Status::Infeasible;
      out.duals = map_duals(phase1);
      return out;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t r = 0; r < mr; ++r) {
      if (t.basis()[r] < first_art) continue;
      std::ptrdiff_t best = -1;
      double best_abs = kPivotTolerance;
      for (std::size_t c = 0; c < first_art; ++c) {
        const double a = std::abs(t.at(r, c));
        if (a > best_abs) {
          best_abs = a;
          best = static_cast<std::ptrdiff_t>(c);
        }
      }
      if (best >= 0) t.pivot(r, static_cast<std::size_t>(best));
    }
    for (std::size_t c = first_art; c < total; ++c) allowed[c] = 0;
  }

  // Phase 2.
  std::vector<double> phase2(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& cm = map[j];
    const double cj = sense * problem.objective[j];
    if (cm.pos >= 0) phase2[static_cast<std::size_t>(cm.pos)] += cj * cm.sign;
    if (cm.neg >= 0) phase2[static_cast<std::size_t>(cm.neg)] -= cj;
  }
  t.price(phase2);
  if (run_phase(t, allowed, out.iterations, iteration_limit) == PhaseResult::Unbounded) {
    out.status = Status::Unbounded;
    out.duals.clear();
    return out;
  }

  std::vector<double> xstd(total, 0.0);
  for (std::size_t r = 0; r < mr; ++r) xstd[t.basis()[r]] = std::max(t.rhs(r), 0.0);
  refine_basic_values(kept, slack_col, art_col, t.basis(), xstd);
  out.values.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& cm = map[j];
    double x = cm.offset;
    if (cm.pos >= 0) x += cm.sign * xstd[static_cast<std::size_t>(cm.pos)];
    if (cm.neg >= 0) x -= xstd[static_cast<std::size_t>(cm.neg)];
    out.values[j] = x;
  }
  out.status = Status::Optimal;
  out.objective = objective_value(problem, out.values);
  out.duals = map_duals(phase2);
  return out;
}

double objective_value(const LinearProgram& problem, const std::vector<double>& values) {
  double z = 0.0;
  for (std::size_t j = 0; j < problem.num_variables(); ++j) z += problem.objective[j] * values[j];
  return z;
}

double max_violation(const LinearProgram& problem, const std::vector<double>& values) {
  double worst = 0.0;
  for (std::size_t j = 0; j < problem.num_variables(); ++j) {
    worst = std::max(worst, problem.variables[j].lower - values[j]);
    worst = std::max(worst, values[j] - problem.variables[j].upper);
  }
  for (const auto& row : problem.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < problem.num_variables(); ++j) lhs += row.coefficients[j] * values[j];
    const double diff = lhs - row.rhs;
    switch (row.relation) {
      case Relation::LessEqual: worst = std::max(worst, diff); break;
      case Relation::GreaterEqual: worst = std::max(worst, -diff); break;
      case Relation::Equal: worst = std::max(worst, std::abs(diff)); break;
    }
  }
  return worst;
}

double dual_bound(const LinearProgram& problem, const std::vector<double>& duals,
                  bool zero_objective, double tolerance) {
  const std::size_t n = problem.num_variables();
  const std::size_t m = problem.num_constraints();
  if (duals.size() != m) return -kInfinity;
  const double sense = problem.sense == Sense::Minimize ? 1.0 : -1.0;
  double bound = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = problem.constraints[i];
    const double y = duals[i];
    if (row.relation == Relation::GreaterEqual && y < -tolerance) return -kInfinity;
    if (row.relation == Relation::LessEqual && y > tolerance) return -kInfinity;
    bound += row.rhs * y;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double d = zero_objective ? 0.0 : sense * problem.objective[j];
    double magnitude = std::abs(d);
    for (std::size_t i = 0; i < m; ++i) {
      const double term = problem.constraints[i].coefficients[j] * duals[i];
      d -= term;
      magnitude += std::abs(term);
    }
    const double lo = problem.variables[j].lower;
    const double hi = problem.variables[j].upper;
    const double tol = tolerance * (1.0 + magnitude);
    if (d > tol) {
      if (!std::isfinite(lo)) return -kInfinity;
      bound += d * lo;
    } else if (d < -tol) {
      if (!std::isfinite(hi)) return -kInfinity;
      bound += d * hi;
    } else if (std::isfinite(lo) && std::isfinite(hi)) {
      bound += std::min(d * lo, d * hi);
    } else if (std::isfinite(lo)) {
      bound += d * lo;
    } else if (std::isfinite(hi)) {
      bound += d * hi;
    }
  }
  return bound;
}

CertificateCheck verify_certificate(const LinearProgram& problem, const Solution& solution,
                                    double tolerance) {
  CertificateCheck check;
  const double sense = problem.sense == Sense::Minimize ? 1.0 : -1.0;
  if (solution.status == Status::Optimal) {
    const double g = dual_bound(problem, solution.duals, false);
    if (!std::isfinite(g)) return check;
    check.gap = std::abs(sense * solution.objective - g);
    check.valid = check.gap <= tolerance * (1.0 + std::abs(solution.objective));
  } else if (solution.status == Status::Infeasible) {
    const double g = dual_bound(problem, solution.duals, true);
    if (!std::isfinite(g)) return check;
    check.gap = -g;
    check.valid = g > 1e-9;
  }
  return check;
}

}  // namespace goaldea::lp
