#include "goaldea/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goaldea/errors.hpp"

namespace goaldea::models {

const char* to_string(Formulation formulation) noexcept {
  switch (formulation) {
    case Formulation::Automatic: return "automatic";
    case Formulation::NonOrientedBasic: return "non_oriented_basic";
    case Formulation::OutputOrientedBasic: return "output_oriented_basic";
    case Formulation::General: return "general";
  }
  return "unknown";
}

namespace {

// Weights below this are reported as zero.
constexpr double kWeightCutoff = 1e-10;

std::size_t require_dmu(const dea::Technology& technology, std::string_view dmu) {
  const auto j = technology.dataset().index_of(dmu);
  if (!j) throw std::invalid_argument("unknown DMU '" + std::string(dmu) + "'");
  return *j;
}

// Shared pieces of every formulation: the reference block (lambda_j, d_j),
// the hyperplane prices (v, u, u_0) and the supporting-hyperplane rows.
// All data are divided by the evaluated DMU's actual levels.
class Assembler {
 public:
  Assembler(const dea::Technology& technology, std::size_t dmu, const GoalVector& goals,
            std::vector<Role> roles, Formulation formulation)
      : tech_(technology), dmu_(dmu), goals_(goals) {
    model_.formulation = formulation;
    model_.roles = std::move(roles);
    const auto& schema = tech_.schema();
    if (goals_.size() != schema.size()) {
      throw std::invalid_argument("goal vector dimension differs from schema");
    }
    for (std::size_t k = 0; k < schema.size(); ++k) {
      if (is_discretionary(model_.roles[k]) && !goals_[k]) {
        throw std::invalid_argument("no goal for discretionary variable '" + schema[k].name + "'");
      }
    }
    const auto& E = tech_.extreme();
    model_.layout.reference = E;
    auto& lp = model_.program;
    for (std::size_t j : E) {
      model_.layout.lambda.push_back(lp.add_variable("lambda_" + tech_.dataset().dmu_ids[j]));
    }
    for (std::size_t j : E) {
      model_.layout.gap.push_back(lp.add_variable("d_" + tech_.dataset().dmu_ids[j]));
    }
    for (std::size_t k = 0; k < schema.size(); ++k) {
      const bool discretionary = is_discretionary(model_.roles[k]);
      const std::string prefix = schema[k].is_input() ? "v_" : "u_";
      model_.layout.price.push_back(
          lp.add_variable(prefix + schema[k].name, discretionary ? 1.0 : 0.0, lp::kInfinity));
    }
    model_.layout.intercept = lp.add_variable("u0", -lp::kInfinity, lp::kInfinity);
    const std::size_t nv = schema.size();
    model_.layout.dev_plus.assign(nv, -1);
    model_.layout.dev_minus.assign(nv, -1);
    model_.layout.goal_plus.assign(nv, -1);
    model_.layout.goal_minus.assign(nv, -1);
    model_.layout.fixed_slack.assign(nv, -1);
  }

  double scale(std::size_t k) const { return tech_.dataset().values[dmu_][k]; }
  double level(std::size_t j, std::size_t k) const { return tech_.dataset().values[j][k] / scale(k); }
  double goal(std::size_t k) const { return *goals_[k] / scale(k); }

  lp::LinearProgram& program() { return model_.program; }
  BuiltModel& model() { return model_; }
  const VariableSchema& schema() const { return tech_.schema(); }

  std::size_t add(std::string name, double lower, double upper) {
    return model_.program.add_variable(std::move(name), lower, upper);
  }

  // sum_j lambda_j z_kj as terms.
  std::vector<lp::Term> envelope(std::size_t k) const {
    std::vector<lp::Term> terms;
    const auto& E = model_.layout.reference;
    for (std::size_t q = 0; q < E.size(); ++q) terms.emplace_back(model_.layout.lambda[q], level(E[q], k));
    return terms;
  }

  void add_convexity() {
    std::vector<lp::Term> terms;
    for (std::size_t col : model_.layout.lambda) terms.emplace_back(col, 1.0);
    model_.program.add_constraint(terms, lp::Relation::Equal, 1.0, "convexity");
  }

  // -v'X_j + u'Y_j + u_0 + d_j = 0 for every j in E.
  void add_hyperplanes() {
    const auto& E = model_.layout.reference;
    const auto& schema = tech_.schema();
    for (std::size_t q = 0; q < E.size(); ++q) {
      std::vector<lp::Term> terms;
      for (std::size_t k = 0; k < schema.size(); ++k) {
        const double sign = schema[k].is_input() ? -1.0 : 1.0;
        terms.emplace_back(model_.layout.price[k], sign * level(E[q], k));
      }
      terms.emplace_back(model_.layout.intercept, 1.0);
      terms.emplace_back(model_.layout.gap[q], 1.0);
      model_.program.add_constraint(terms, lp::Relation::Equal, 0.0,
                                    "hyperplane_" + tech_.dataset().dmu_ids[E[q]]);
    }
  }

  void add_reference_pairs() {
    for (std::size_t q = 0; q < model_.layout.lambda.size(); ++q) {
      model_.pairs.add(model_.layout.lambda[q], model_.layout.gap[q]);
    }
  }

  void set_objective(double alpha) {
    auto& lp = model_.program;
    for (std::size_t c = 0; c < lp.num_variables(); ++c) {
      lp.objective[c] = alpha * model_.actual_terms[c] + (1.0 - alpha) * model_.goal_terms[c];
    }
  }

  void size_terms() {
    model_.actual_terms.resize(model_.program.num_variables(), 0.0);
    model_.goal_terms.resize(model_.program.num_variables(), 0.0);
  }

 private:
  const dea::Technology& tech_;
  std::size_t dmu_;
  const GoalVector& goals_;
  BuiltModel model_;
};

// Goals on every variable; free deviations split into nonnegative parts,
// fixed variables carry a nonnegative slack complementary to their price.
BuiltModel build_general(const dea::Technology& technology, std::size_t dmu,
                         const GoalVector& goals, std::vector<Role> roles, double alpha) {
  Assembler a(technology, dmu, goals, std::move(roles), Formulation::General);
  const auto& schema = a.schema();
  const auto& roles_ref = a.model().roles;
  auto& layout = a.model().layout;
  for (std::size_t k = 0; k < schema.size(); ++k) {
    const auto& name = schema[k].name;
    if (is_discretionary(roles_ref[k])) {
      layout.dev_plus[k] = static_cast<std::ptrdiff_t>(a.add("dev+_" + name, 0.0, lp::kInfinity));
      layout.dev_minus[k] = static_cast<std::ptrdiff_t>(a.add("dev-_" + name, 0.0, lp::kInfinity));
      layout.goal_plus[k] = static_cast<std::ptrdiff_t>(a.add("goal+_" + name, 0.0, lp::kInfinity));
      layout.goal_minus[k] = static_cast<std::ptrdiff_t>(a.add("goal-_" + name, 0.0, lp::kInfinity));
    } else {
      layout.fixed_slack[k] = static_cast<std::ptrdiff_t>(a.add("slack_" + name, 0.0, lp::kInfinity));
    }
  }
  a.size_terms();
  auto& model = a.model();
  auto col = [](std::ptrdiff_t c) { return static_cast<std::size_t>(c); };

  // Balance rows against actual levels:
  //   inputs  sum lambda x + t = x0,  outputs  sum lambda y - s = y0.
  for (std::size_t k = 0; k < schema.size(); ++k) {
    auto terms = a.envelope(k);
    const double sign = schema[k].is_input() ? 1.0 : -1.0;
    if (is_discretionary(roles_ref[k])) {
      terms.emplace_back(col(layout.dev_plus[k]), sign);
      terms.emplace_back(col(layout.dev_minus[k]), -sign);
      model.actual_terms[col(layout.dev_plus[k])] = 1.0;
      model.actual_terms[col(layout.dev_minus[k])] = 1.0;
    } else {
      terms.emplace_back(col(layout.fixed_slack[k]), sign);
    }
    a.program().add_constraint(terms, lp::Relation::Equal, 1.0, "actual_" + schema[k].name);
  }
  for (std::size_t k = 0; k < schema.size(); ++k) {
    if (!is_discretionary(roles_ref[k])) continue;
    auto terms = a.envelope(k);
    const double sign = schema[k].is_input() ? 1.0 : -1.0;
    terms.emplace_back(col(layout.goal_plus[k]), sign);
    terms.emplace_back(col(layout.goal_minus[k]), -sign);
    model.goal_terms[col(layout.goal_plus[k])] = 1.0;
    model.goal_terms[col(layout.goal_minus[k])] = 1.0;
    a.program().add_constraint(terms, lp::Relation::Equal, a.goal(k), "goal_" + schema[k].name);
  }
  a.add_convexity();
  a.add_hyperplanes();
  a.add_reference_pairs();
  for (std::size_t k = 0; k < schema.size(); ++k) {
    if (roles_ref[k] == Role::FixedInput) model.pairs.add(layout.price[k], col(layout.fixed_slack[k]));
  }
  for (std::size_t k = 0; k < schema.size(); ++k) {
    if (roles_ref[k] == Role::FixedOutput) model.pairs.add(layout.price[k], col(layout.fixed_slack[k]));
  }
  a.set_objective(alpha);
  return std::move(a.model());
}

// The basic formulations keep the deviations as free variables, as they
// appear in the balance rows, and bound their magnitudes from above with
// epigraph variables e >= |t| instead of splitting them.
struct FreeDeviation {
  std::size_t value;
  std::size_t magnitude;
};

FreeDeviation add_free_deviation(Assembler& a, const std::string& name) {
  const std::size_t t = a.add(name, -lp::kInfinity, lp::kInfinity);
  const std::size_t e = a.add("|" + name + "|", 0.0, lp::kInfinity);
  return {t, e};
}

void bound_magnitudes(Assembler& a, const std::vector<FreeDeviation>& devs) {
  for (const auto& d : devs) {
    a.program().add_constraint({{d.magnitude, 1.0}, {d.value, -1.0}}, lp::Relation::GreaterEqual, 0.0);
    a.program().add_constraint({{d.magnitude, 1.0}, {d.value, 1.0}}, lp::Relation::GreaterEqual, 0.0);
  }
}

BuiltModel build_non_oriented_basic(const dea::Technology& technology, std::size_t dmu,
                                    const GoalVector& goals, double alpha) {
  const auto& schema = technology.schema();
  std::vector<Role> roles;
  for (const auto& e : schema.entries()) {
    roles.push_back(e.is_input() ? Role::DiscretionaryInput : Role::DiscretionaryOutput);
  }
  Assembler a(technology, dmu, goals, roles, Formulation::NonOrientedBasic);
  std::vector<FreeDeviation> actual, goal;
  for (std::size_t k = 0; k < schema.size(); ++k) {
    actual.push_back(add_free_deviation(a, (schema[k].is_input() ? "t_" : "s_") + schema[k].name));
  }
  for (std::size_t k = 0; k < schema.size(); ++k) {
    goal.push_back(add_free_deviation(a, (schema[k].is_input() ? "tg_" : "sg_") + schema[k].name));
  }
  a.size_terms();
  auto& model = a.model();
  for (std::size_t k = 0; k < schema.size(); ++k) {
    model.actual_terms[actual[k].magnitude] = 1.0;
    model.goal_terms[goal[k].magnitude] = 1.0;
  }
  // sum lambda x = x0 - t ; sum lambda y = y0 + s ; same against goals.
  for (std::size_t k = 0; k < schema.size(); ++k) {
    auto terms = a.envelope(k);
    terms.emplace_back(actual[k].value, schema[k].is_input() ? 1.0 : -1.0);
    a.program().add_constraint(terms, lp::Relation::Equal, 1.0);
  }
  for (std::size_t k = 0; k < schema.size(); ++k) {
    auto terms = a.envelope(k);
    terms.emplace_back(goal[k].value, schema[k].is_input() ? 1.0 : -1.0);
    a.program().add_constraint(terms, lp::Relation::Equal, a.goal(k));
  }
  a.add_convexity();
  a.add_hyperplanes();
  bound_magnitudes(a, actual);
  bound_magnitudes(a, goal);
  a.add_reference_pairs();
  a.set_objective(alpha);
  return std::move(a.model());
}

BuiltModel build_output_oriented_basic(const dea::Technology& technology, std::size_t dmu,
                                       const GoalVector& goals, double alpha) {
  const auto& schema = technology.schema();
  std::vector<Role> roles;
  for (const auto& e : schema.entries()) {
    roles.push_back(e.is_input() ? Role::FixedInput : Role::DiscretionaryOutput);
  }
  Assembler a(technology, dmu, goals, roles, Formulation::OutputOrientedBasic);
  std::vector<std::ptrdiff_t> input_slack(schema.size(), -1);
  std::vector<FreeDeviation> actual, goal;
  std::vector<std::size_t> outputs;
  for (std::size_t k = 0; k < schema.size(); ++k) {
    if (schema[k].is_input()) {
      input_slack[k] = static_cast<std::ptrdiff_t>(a.add("t_" + schema[k].name, 0.0, lp::kInfinity));
    } else {
      outputs.push_back(k);
    }
  }
  for (std::size_t k : outputs) actual.push_back(add_free_deviation(a, "s_" + schema[k].name));
  for (std::size_t k : outputs) goal.push_back(add_free_deviation(a, "sg_" + schema[k].name));
  a.size_terms();
  auto& model = a.model();
  model.layout.fixed_slack = input_slack;
  for (std::size_t q = 0; q < outputs.size(); ++q) {
    model.actual_terms[actual[q].magnitude] = 1.0;
    model.goal_terms[goal[q].magnitude] = 1.0;
  }
  for (std::size_t k = 0; k < schema.size(); ++k) {
    if (!schema[k].is_input()) continue;
    auto terms = a.envelope(k);
    terms.emplace_back(static_cast<std::size_t>(input_slack[k]), 1.0);
    a.program().add_constraint(terms, lp::Relation::Equal, 1.0);
  }
  for (std::size_t q = 0; q < outputs.size(); ++q) {
    auto terms = a.envelope(outputs[q]);
    terms.emplace_back(actual[q].value, -1.0);
    a.program().add_constraint(terms, lp::Relation::Equal, 1.0);
  }
  for (std::size_t q = 0; q < outputs.size(); ++q) {
    auto terms = a.envelope(outputs[q]);
    terms.emplace_back(goal[q].value, -1.0);
    a.program().add_constraint(terms, lp::Relation::Equal, a.goal(outputs[q]));
  }
  a.add_convexity();
  a.add_hyperplanes();
  bound_magnitudes(a, actual);
  bound_magnitudes(a, goal);
  a.add_reference_pairs();
  for (std::size_t k = 0; k < schema.size(); ++k) {
    if (schema[k].is_input()) {
      model.pairs.add(model.layout.price[k], static_cast<std::size_t>(input_slack[k]));
    }
  }
  a.set_objective(alpha);
  return std::move(a.model());
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

BuiltModel build_model(ModelKind kind, const dea::Technology& technology, std::string_view dmu,
                       const GoalVector& goals, double alpha, Formulation formulation) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha outside [0, 1]");
  const std::size_t j = require_dmu(technology, dmu);
  const auto& schema = technology.schema();
  switch (formulation) {
    case Formulation::Automatic:
    case Formulation::General:
      return build_general(technology, j, goals, roles_for(kind, schema), alpha);
    case Formulation::NonOrientedBasic:
      if (kind != ModelKind::NonOriented || schema.controllable().size() != schema.size()) {
        throw std::invalid_argument("basic non-oriented model needs goals on every variable");
      }
      return build_non_oriented_basic(technology, j, goals, alpha);
    case Formulation::OutputOrientedBasic:
      if (kind != ModelKind::OutputOriented ||
          !schema.indices(VariableKind::Output, Control::NonControllable).empty()) {
        throw std::invalid_argument(
            "basic output-oriented model needs output goals and no non-controllable output");
      }
      return build_output_oriented_basic(technology, j, goals, alpha);
  }
  throw std::invalid_argument("unknown formulation");
}

double actual_distance(const std::vector<Role>& roles, const std::vector<double>& actual,
                       const std::vector<double>& target) {
  double d = 0.0;
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (is_discretionary(roles[k])) d += std::abs(actual[k] - target[k]) / actual[k];
  }
  return d;
}

double goal_distance(const std::vector<Role>& roles, const std::vector<double>& actual,
                     const GoalVector& goals, const std::vector<double>& target) {
  double d = 0.0;
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (is_discretionary(roles[k])) d += std::abs(*goals[k] - target[k]) / actual[k];
  }
  return d;
}

BenchmarkResult extract_result(const BuiltModel& model, const dea::Technology& technology,
                               std::string_view dmu, const GoalVector& goals, ModelKind kind,
                               double alpha, const std::vector<double>& values) {
  const auto& dataset = technology.dataset();
  const auto& schema = dataset.schema;
  const std::size_t j0 = require_dmu(technology, dmu);
  const auto& actual = dataset.values[j0];

  BenchmarkResult r;
  r.dmu = std::string(dmu);
  r.alpha = alpha;
  r.kind = kind;
  r.targets.assign(schema.size(), 0.0);
  const auto& E = model.layout.reference;
  for (std::size_t q = 0; q < E.size(); ++q) {
    const double w = values[model.layout.lambda[q]];
    if (w <= kWeightCutoff) continue;
    r.reference_set.push_back({dataset.dmu_ids[E[q]], w});
    for (std::size_t k = 0; k < schema.size(); ++k) r.targets[k] += w * dataset.values[E[q]][k];
  }
  r.deviations.actual.resize(schema.size());
  r.deviations.goal.resize(schema.size());
  for (std::size_t k = 0; k < schema.size(); ++k) {
    const double sign = schema[k].is_input() ? 1.0 : -1.0;
    r.deviations.actual[k] = sign * (actual[k] - r.targets[k]);
    if (is_discretionary(model.roles[k]) && goals[k]) {
      r.deviations.goal[k] = sign * (*goals[k] - r.targets[k]);
    }
  }
  r.d_actual = actual_distance(model.roles, actual, r.targets);
  r.d_goal = goal_distance(model.roles, actual, goals, r.targets);
  r.objective = alpha * r.d_actual + (1.0 - alpha) * r.d_goal;
  return r;
}

BenchmarkResult solve_benchmark(ModelKind kind, const dea::Technology& technology,
                                std::string_view dmu, const GoalVector& goals, double alpha,
                                const SolveOptions& options) {
  BuiltModel model = build_model(kind, technology, dmu, goals, alpha, options.formulation);
  sos::Options sos_options;
  sos_options.node_limit = options.node_limit;
  auto first = sos::solve(model.program, model.pairs, sos_options);
  if (first.lp.status != lp::Status::Optimal) {
    throw SolverError("benchmarking model for '" + std::string(dmu) + "' is " +
                      lp::to_string(first.lp.status));
  }
  std::vector<double> values = std::move(first.lp.values);
  std::size_t nodes = first.nodes;
  bool stage2 = false;

  if (alpha == 1.0 || alpha == 0.0) {
    const auto& held = alpha == 1.0 ? model.actual_terms : model.goal_terms;
    const auto& other = alpha == 1.0 ? model.goal_terms : model.actual_terms;
    lp::LinearProgram second = model.program;
    second.objective = other;
    std::vector<lp::Term> terms;
    for (std::size_t c = 0; c < held.size(); ++c) {
      if (held[c] != 0.0) terms.emplace_back(c, held[c]);
    }
    second.add_constraint(terms, lp::Relation::LessEqual, dot(held, values) + kStageTwoSlack,
                          "first_stage_optimum");
    sos_options.incumbent = values;
    auto refined = sos::solve(second, model.pairs, sos_options);
    if (refined.lp.status != lp::Status::Optimal) {
      throw SolverError("second stage for '" + std::string(dmu) + "' is " +
                        lp::to_string(refined.lp.status));
    }
    values = std::move(refined.lp.values);
    nodes += refined.nodes;
    stage2 = true;
  }

  BenchmarkResult result = extract_result(model, technology, dmu, goals, kind, alpha, values);
  result.stage2_applied = stage2;
  result.nodes = nodes;
  return result;
}

std::vector<SweepEntry> sweep_alpha_grid(ModelKind kind, const dea::Technology& technology,
                                         std::string_view dmu, const GoalVector& goals,
                                         const AlphaGrid& grid, const SolveOptions& options) {
  std::vector<SweepEntry> out;
  out.reserve(grid.size());
  for (double alpha : grid.values()) {
    SweepEntry entry;
    entry.alpha = alpha;
    try {
      entry.result = solve_benchmark(kind, technology, dmu, goals, alpha, options);
    } catch (const SolverError& e) {
      entry.error = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<double> conditioning_factors(const Dataset& dataset) {
  std::vector<double> f(dataset.schema.size(), 0.0);
  for (const auto& row : dataset.values) {
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::max(f[k], row[k]);
  }
  for (double& x : f) {
    if (!(x > 0.0)) x = 1.0;
  }
  return f;
}

Dataset rescale(const Dataset& dataset, const std::vector<double>& factors) {
  Dataset out = dataset;
  for (auto& row : out.values) {
    for (std::size_t k = 0; k < row.size(); ++k) row[k] /= factors[k];
  }
  return out;
}

GoalSet rescale(const GoalSet& goals, const VariableSchema& schema,
                const std::vector<double>& factors) {
  GoalSet out = goals;
  for (auto& [dmu, levels] : out.by_dmu) {
    for (auto& [name, value] : levels) {
      if (auto k = schema.index_of(name)) value /= factors[*k];
    }
  }
  return out;
}

BenchmarkResult restore_units(BenchmarkResult result, const std::vector<double>& factors) {
  for (std::size_t k = 0; k < factors.size(); ++k) {
    result.targets[k] *= factors[k];
    result.deviations.actual[k] *= factors[k];
    if (result.deviations.goal[k]) *result.deviations.goal[k] *= factors[k];
  }
  return result;
}

}  // namespace goaldea::models
