#include "goaldea/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "goaldea/simplex.hpp"

namespace goaldea::oracle {

bool is_supported_face(const dea::Technology& technology, const FaceCandidate& candidate,
                       const std::vector<Role>& roles) {
  const auto& dataset = technology.dataset();
  const auto& schema = dataset.schema;
  if (candidate.face.empty()) throw std::invalid_argument("face candidate is empty");

  lp::LinearProgram problem;
  std::vector<std::size_t> price(schema.size());
  for (std::size_t k = 0; k < schema.size(); ++k) {
    double lower = is_discretionary(roles[k]) ? 1.0 : 0.0;
    double upper = lp::kInfinity;
    const auto& pool = is_input(roles[k]) ? candidate.free_inputs : candidate.free_outputs;
    if (std::find(pool.begin(), pool.end(), k) != pool.end()) {
      if (is_discretionary(roles[k])) return false;
      lower = upper = 0.0;
    }
    price[k] = problem.add_variable("p_" + schema[k].name, lower, upper);
  }
  const std::size_t intercept = problem.add_variable("u0", -lp::kInfinity, lp::kInfinity);
  for (std::size_t j : technology.extreme()) {
    std::vector<lp::Term> terms;
    for (std::size_t k = 0; k < schema.size(); ++k) {
      const double sign = schema[k].is_input() ? -1.0 : 1.0;
      terms.emplace_back(price[k], sign * dataset.values[j][k]);
    }
    terms.emplace_back(intercept, 1.0);
    const bool on_face =
        std::find(candidate.face.begin(), candidate.face.end(), j) != candidate.face.end();
    problem.add_constraint(terms, on_face ? lp::Relation::Equal : lp::Relation::LessEqual, 0.0);
  }
  return lp::solve(problem).status == lp::Status::Optimal;
}

bool is_supported_face(const dea::Technology& technology, const FaceCandidate& candidate,
                       ModelKind kind) {
  return is_supported_face(technology, candidate, roles_for(kind, technology.schema()));
}

namespace {

struct BitLayout {
  std::vector<std::size_t> reference;  // E
  std::vector<std::size_t> inputs;     // fixed inputs
  std::vector<std::size_t> outputs;    // fixed outputs
  std::size_t bits() const { return reference.size() + inputs.size() + outputs.size(); }
  std::uint32_t face_mask() const { return (std::uint32_t{1} << reference.size()) - 1; }

  FaceCandidate decode(std::uint32_t mask) const {
    FaceCandidate c;
    std::size_t b = 0;
    for (std::size_t j : reference) {
      if (mask >> b++ & 1u) c.face.push_back(j);
    }
    for (std::size_t k : inputs) {
      if (mask >> b++ & 1u) c.free_inputs.push_back(k);
    }
    for (std::size_t k : outputs) {
      if (mask >> b++ & 1u) c.free_outputs.push_back(k);
    }
    return c;
  }
};

BitLayout layout_for(const dea::Technology& technology, const std::vector<Role>& roles) {
  BitLayout layout;
  layout.reference = technology.extreme();
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (roles[k] == Role::FixedInput) layout.inputs.push_back(k);
    if (roles[k] == Role::FixedOutput) layout.outputs.push_back(k);
  }
  if (layout.reference.size() > kMaxReferenceUnits || layout.bits() > kMaxCandidateBits) {
    throw EnumerationTooLarge("face enumeration over " + std::to_string(layout.reference.size()) +
                              " extreme units and " +
                              std::to_string(layout.inputs.size() + layout.outputs.size()) +
                              " fixed variables exceeds the enumeration cap");
  }
  return layout;
}

bool contains(const std::vector<std::size_t>& set, std::size_t x) {
  return std::find(set.begin(), set.end(), x) != set.end();
}

struct FaceSolve {
  double objective = 0.0;
  std::vector<double> weights;  // per face member
};

// Minimizes a*|actual dev| + b*|goal dev| (normalized) on one candidate; with
// `cap` the actual (cap_on_actual) or goal term is bounded from above.
std::optional<FaceSolve> solve_on_face(const dea::Technology& technology, std::size_t dmu,
                                       const GoalVector& goals, const std::vector<Role>& roles,
                                       const FaceCandidate& face, double weight_actual,
                                       double weight_goal, std::optional<double> cap,
                                       bool cap_on_actual) {
  const auto& dataset = technology.dataset();
  const auto& schema = dataset.schema;
  const auto& x0 = dataset.values[dmu];
  lp::LinearProgram problem;
  std::vector<std::size_t> lambda;
  for (std::size_t q = 0; q < face.face.size(); ++q) lambda.push_back(problem.add_variable("lambda"));
  std::vector<lp::Term> actual_cost, goal_cost;

  auto envelope = [&](std::size_t k) {
    std::vector<lp::Term> terms;
    for (std::size_t q = 0; q < face.face.size(); ++q) {
      terms.emplace_back(lambda[q], dataset.values[face.face[q]][k]);
    }
    return terms;
  };

  for (std::size_t k = 0; k < schema.size(); ++k) {
    const double sign = is_input(roles[k]) ? 1.0 : -1.0;
    if (is_discretionary(roles[k])) {
      const double w = 1.0 / x0[k];
      const auto dp = problem.add_variable("dp", 0.0, lp::kInfinity, weight_actual * w);
      const auto dm = problem.add_variable("dm", 0.0, lp::kInfinity, weight_actual * w);
      const auto gp = problem.add_variable("gp", 0.0, lp::kInfinity, weight_goal * w);
      const auto gm = problem.add_variable("gm", 0.0, lp::kInfinity, weight_goal * w);
      auto row = envelope(k);
      row.emplace_back(dp, sign);
      row.emplace_back(dm, -sign);
      problem.add_constraint(row, lp::Relation::Equal, x0[k]);
      auto grow = envelope(k);
      grow.emplace_back(gp, sign);
      grow.emplace_back(gm, -sign);
      problem.add_constraint(grow, lp::Relation::Equal, *goals[k]);
      actual_cost.insert(actual_cost.end(), {{dp, w}, {dm, w}});
      goal_cost.insert(goal_cost.end(), {{gp, w}, {gm, w}});
    } else {
      auto row = envelope(k);
      const auto& pool = is_input(roles[k]) ? face.free_inputs : face.free_outputs;
      if (contains(pool, k)) {
        row.emplace_back(problem.add_variable("slack"), sign);
      }
      problem.add_constraint(row, lp::Relation::Equal, x0[k]);
    }
  }
  std::vector<lp::Term> convex;
  for (std::size_t c : lambda) convex.emplace_back(c, 1.0);
  problem.add_constraint(convex, lp::Relation::Equal, 1.0);
  if (cap) {
    problem.add_constraint(cap_on_actual ? actual_cost : goal_cost, lp::Relation::LessEqual, *cap);
  }
  const auto solution = lp::solve(problem);
  if (solution.status != lp::Status::Optimal) return std::nullopt;
  FaceSolve out;
  out.objective = solution.objective;
  for (std::size_t c : lambda) out.weights.push_back(solution.values[c]);
  return out;
}

models::BenchmarkResult assemble(const dea::Technology& technology, std::size_t dmu,
                                 const GoalVector& goals, const std::vector<Role>& roles,
                                 ModelKind kind, double alpha, const FaceCandidate& face,
                                 const std::vector<double>& weights) {
  const auto& dataset = technology.dataset();
  const auto& schema = dataset.schema;
  const auto& x0 = dataset.values[dmu];
  models::BenchmarkResult r;
  r.dmu = dataset.dmu_ids[dmu];
  r.alpha = alpha;
  r.kind = kind;
  r.targets.assign(schema.size(), 0.0);
  for (std::size_t q = 0; q < face.face.size(); ++q) {
    if (weights[q] <= 1e-10) continue;
    r.reference_set.push_back({dataset.dmu_ids[face.face[q]], weights[q]});
    for (std::size_t k = 0; k < schema.size(); ++k) {
      r.targets[k] += weights[q] * dataset.values[face.face[q]][k];
    }
  }
  r.deviations.actual.resize(schema.size());
  r.deviations.goal.resize(schema.size());
  for (std::size_t k = 0; k < schema.size(); ++k) {
    const double sign = is_input(roles[k]) ? 1.0 : -1.0;
    r.deviations.actual[k] = sign * (x0[k] - r.targets[k]);
    if (is_discretionary(roles[k])) {
      r.deviations.goal[k] = sign * (*goals[k] - r.targets[k]);
      r.d_actual += std::abs(x0[k] - r.targets[k]) / x0[k];
      r.d_goal += std::abs(*goals[k] - r.targets[k]) / x0[k];
    }
  }
  r.objective = alpha * r.d_actual + (1.0 - alpha) * r.d_goal;
  return r;
}

}  // namespace

std::vector<FaceCandidate> maximal_supported_faces(const dea::Technology& technology,
                                                   const std::vector<Role>& roles) {
  const BitLayout layout = layout_for(technology, roles);
  const std::size_t bits = layout.bits();
  const std::uint32_t total = std::uint32_t{1} << bits;
  const std::uint32_t face_bits = layout.face_mask();
  std::vector<char> supported(total, 0);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if ((mask & face_bits) == 0) {
      supported[mask] = 1;  // no face constraint; only used for closure checks
      continue;
    }
    bool closed = true;
    for (std::size_t b = 0; b < bits && closed; ++b) {
      const std::uint32_t bit = std::uint32_t{1} << b;
      if ((mask & bit) && !supported[mask ^ bit]) closed = false;
    }
    if (closed) supported[mask] = is_supported_face(technology, layout.decode(mask), roles) ? 1 : 0;
  }
  std::vector<FaceCandidate> out;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    if ((mask & face_bits) == 0 || !supported[mask]) continue;
    bool maximal = true;
    for (std::size_t b = 0; b < bits && maximal; ++b) {
      const std::uint32_t bit = std::uint32_t{1} << b;
      if (!(mask & bit) && supported[mask | bit]) maximal = false;
    }
    if (maximal) out.push_back(layout.decode(mask));
  }
  return out;
}

OracleResult oracle_solve(ModelKind kind, const dea::Technology& technology, std::string_view dmu,
                          const GoalVector& goals, double alpha,
                          const std::vector<FaceCandidate>& faces) {
  const auto j0 = technology.dataset().index_of(dmu);
  if (!j0) throw std::invalid_argument("unknown DMU");
  const auto roles = roles_for(kind, technology.schema());

  auto scan = [&](double wa, double wg, std::optional<double> cap, bool cap_on_actual)
      -> std::optional<std::pair<std::size_t, FaceSolve>> {
    std::optional<std::pair<std::size_t, FaceSolve>> best;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      auto s = solve_on_face(technology, *j0, goals, roles, faces[f], wa, wg, cap, cap_on_actual);
      if (s && (!best || s->objective < best->second.objective - 1e-12)) best.emplace(f, std::move(*s));
    }
    return best;
  };

  auto best = scan(alpha, 1.0 - alpha, std::nullopt, false);
  if (!best) throw SolverError("oracle found no feasible face");
  const bool stage2 = alpha == 1.0 || alpha == 0.0;
  if (stage2) {
    const bool hold_actual = alpha == 1.0;
    auto refined = scan(hold_actual ? 0.0 : 1.0, hold_actual ? 1.0 : 0.0,
                        best->second.objective + models::kStageTwoSlack, hold_actual);
    if (refined) best = std::move(refined);
  }
  OracleResult out;
  out.face = faces[best->first];
  out.result = assemble(technology, *j0, goals, roles, kind, alpha, out.face, best->second.weights);
  out.result.stage2_applied = stage2;
  return out;
}

models::BenchmarkResult oracle_solve(ModelKind kind, const dea::Technology& technology,
                                     std::string_view dmu, const GoalVector& goals, double alpha) {
  const auto faces = maximal_supported_faces(technology, roles_for(kind, technology.schema()));
  return oracle_solve(kind, technology, dmu, goals, alpha, faces).result;
}

}  // namespace goaldea::oracle
