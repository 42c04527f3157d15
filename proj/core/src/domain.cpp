#include "goaldea/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace goaldea {

const char* to_string(IssueCode code) noexcept {
  switch (code) {
    case IssueCode::InvalidSchema: return "InvalidSchema";
    case IssueCode::NonPositiveValue: return "NonPositiveValue";
    case IssueCode::UnknownVariable: return "UnknownVariable";
    case IssueCode::MissingValue: return "MissingValue";
    case IssueCode::DuplicateDmu: return "DuplicateDmu";
    case IssueCode::UnknownDmu: return "UnknownDmu";
    case IssueCode::IncoherentGoalCoverage: return "IncoherentGoalCoverage";
    case IssueCode::MissingGoalRow: return "MissingGoalRow";
  }
  return "Unknown";
}

namespace {

std::string join_issues(const std::vector<Issue>& issues) {
  std::string text;
  for (const auto& issue : issues) {
    if (!text.empty()) text += "\n";
    text += to_string(issue.code);
    text += ": ";
    text += issue.message;
  }
  return text;
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : InputError(join_issues(issues)), issues_(std::move(issues)) {}

bool ValidationError::has(IssueCode code) const noexcept {
  return std::any_of(issues_.begin(), issues_.end(),
                     [code](const Issue& i) { return i.code == code; });
}

std::optional<std::size_t> VariableSchema::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].name == name) return k;
  }
  return std::nullopt;
}

std::vector<std::size_t> VariableSchema::indices(VariableKind kind) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].kind == kind) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> VariableSchema::indices(VariableKind kind, Control control) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].kind == kind && entries_[k].control == control) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> VariableSchema::controllable() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].is_controllable()) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> VariableSchema::report_order() const {
  auto order = indices(VariableKind::Input);
  auto outs = indices(VariableKind::Output);
  order.insert(order.end(), outs.begin(), outs.end());
  return order;
}

std::vector<Issue> VariableSchema::check() const {
  std::vector<Issue> issues;
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.name.empty()) {
      issues.push_back({IssueCode::InvalidSchema, "variable with empty name"});
    } else if (!seen.insert(e.name).second) {
      issues.push_back({IssueCode::InvalidSchema, "duplicate variable name '" + e.name + "'"});
    }
  }
  if (indices(VariableKind::Input).empty()) {
    issues.push_back({IssueCode::InvalidSchema, "schema has no input"});
  }
  if (indices(VariableKind::Output).empty()) {
    issues.push_back({IssueCode::InvalidSchema, "schema has no output"});
  }
  if (controllable().empty()) {
    issues.push_back({IssueCode::InvalidSchema, "schema has no controllable variable"});
  }
  return issues;
}

std::optional<std::size_t> Dataset::index_of(std::string_view dmu) const {
  for (std::size_t j = 0; j < dmu_ids.size(); ++j) {
    if (dmu_ids[j] == dmu) return j;
  }
  return std::nullopt;
}

const char* to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::NonOriented: return "non_oriented";
    case ModelKind::OutputOriented: return "output_oriented";
    case ModelKind::InputOriented: return "input_oriented";
  }
  return "unknown";
}

std::optional<ModelKind> model_kind_from_string(std::string_view text) {
  if (text == "non_oriented") return ModelKind::NonOriented;
  if (text == "output_oriented") return ModelKind::OutputOriented;
  if (text == "input_oriented") return ModelKind::InputOriented;
  return std::nullopt;
}

bool is_input(Role role) noexcept {
  return role == Role::DiscretionaryInput || role == Role::FixedInput;
}

bool is_discretionary(Role role) noexcept {
  return role == Role::DiscretionaryInput || role == Role::DiscretionaryOutput;
}

std::vector<Role> roles_for(ModelKind kind, const VariableSchema& schema) {
  std::vector<Role> roles;
  roles.reserve(schema.size());
  for (const auto& e : schema.entries()) {
    bool discretionary = e.is_controllable();
    if (kind == ModelKind::OutputOriented && e.is_input()) discretionary = false;
    if (kind == ModelKind::InputOriented && e.is_output()) discretionary = false;
    if (e.is_input()) {
      roles.push_back(discretionary ? Role::DiscretionaryInput : Role::FixedInput);
    } else {
      roles.push_back(discretionary ? Role::DiscretionaryOutput : Role::FixedOutput);
    }
  }
  return roles;
}

std::optional<ModelKind> kind_for_coverage(const VariableSchema& schema,
                                           const std::vector<std::string>& covered) {
  std::set<std::size_t> cov;
  for (const auto& name : covered) {
    auto k = schema.index_of(name);
    if (!k || !schema[*k].is_controllable()) return std::nullopt;
    cov.insert(*k);
  }
  if (cov.empty()) return std::nullopt;
  auto as_set = [](const std::vector<std::size_t>& v) {
    return std::set<std::size_t>(v.begin(), v.end());
  };
  if (cov == as_set(schema.controllable())) return ModelKind::NonOriented;
  if (cov == as_set(schema.indices(VariableKind::Output, Control::Controllable))) {
    return ModelKind::OutputOriented;
  }
  if (cov == as_set(schema.indices(VariableKind::Input, Control::Controllable))) {
    return ModelKind::InputOriented;
  }
  return std::nullopt;
}

AlphaGrid AlphaGrid::standard() { return AlphaGrid({1.0, 0.8, 0.6, 0.5, 0.4, 0.2, 0.0}); }

AlphaGrid::AlphaGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("alpha grid is empty");
  std::set<double> seen;
  for (double a : values_) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("alpha value outside [0, 1]: " + std::to_string(a));
    }
    if (!seen.insert(a).second) {
      throw std::invalid_argument("duplicate alpha value: " + std::to_string(a));
    }
  }
}

std::vector<std::size_t> duplicate_representatives(const Dataset& dataset) {
  std::vector<std::size_t> rep(dataset.size());
  std::map<std::vector<double>, std::size_t> first;
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    auto [it, inserted] = first.emplace(dataset.values[j], j);
    rep[j] = it->second;
  }
  return rep;
}

GoalVector goal_vector_for(const VariableSchema& schema, const GoalSet& goals,
                           std::string_view dmu) {
  auto it = goals.by_dmu.find(std::string(dmu));
  if (it == goals.by_dmu.end()) {
    throw ValidationError({{IssueCode::MissingGoalRow, "no goal row for DMU '" + std::string(dmu) + "'"}});
  }
  GoalVector out(schema.size());
  for (const auto& [name, value] : it->second) {
    auto k = schema.index_of(name);
    if (!k) {
      throw ValidationError({{IssueCode::UnknownVariable, "unknown goal variable '" + name + "'"}});
    }
    out[*k] = value;
  }
  return out;
}

std::vector<double> composite_point(const std::vector<double>& actual, const GoalVector& goals) {
  std::vector<double> point = actual;
  for (std::size_t k = 0; k < point.size() && k < goals.size(); ++k) {
    if (goals[k]) point[k] = *goals[k];
  }
  return point;
}

ModelKind derive_model_kind(const VariableSchema& schema, const GoalSet& goals) {
  std::vector<std::string> covered;
  if (!goals.by_dmu.empty()) {
    for (const auto& [name, value] : goals.by_dmu.begin()->second) covered.push_back(name);
  }
  auto kind = kind_for_coverage(schema, covered);
  if (!kind) {
    throw ValidationError({{IssueCode::IncoherentGoalCoverage,
                            "goals must cover all controllable variables, all controllable "
                            "outputs, or all controllable inputs"}});
  }
  return *kind;
}

std::vector<std::string> ValidatedInstance::benchmark_dmus() const {
  std::vector<std::string> out;
  for (const auto& id : dataset_.dmu_ids) {
    if (goals_.by_dmu.count(id)) out.push_back(id);
  }
  return out;
}

GoalVector ValidatedInstance::goal_vector(std::string_view dmu) const {
  if (!dataset_.index_of(dmu)) {
    throw ValidationError({{IssueCode::UnknownDmu, "unknown DMU '" + std::string(dmu) + "'"}});
  }
  return goal_vector_for(dataset_.schema, goals_, dmu);
}

ValidatedInstance validate(const Dataset& dataset, const GoalSet& goals) {
  const auto& schema = dataset.schema;
  std::vector<Issue> issues = schema.check();

  std::set<std::string> ids;
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    const auto& id = dataset.dmu_ids[j];
    if (id.empty()) issues.push_back({IssueCode::InvalidSchema, "DMU with empty id"});
    if (!ids.insert(id).second) {
      issues.push_back({IssueCode::DuplicateDmu, "duplicate DMU id '" + id + "'"});
    }
    if (j >= dataset.values.size() || dataset.values[j].size() != schema.size()) {
      issues.push_back({IssueCode::MissingValue,
                        "row for DMU '" + id + "' does not cover every schema variable"});
      continue;
    }
    for (std::size_t k = 0; k < schema.size(); ++k) {
      double v = dataset.values[j][k];
      if (!(std::isfinite(v) && v > 0.0)) {
        issues.push_back({IssueCode::NonPositiveValue, "DMU '" + id + "' has non-positive value " +
                                                           std::to_string(v) + " for '" +
                                                           schema[k].name + "'"});
      }
    }
  }
  if (dataset.values.size() != dataset.size()) {
    issues.push_back({IssueCode::MissingValue, "number of value rows differs from number of DMU ids"});
  }
  if (dataset.size() == 0) {
    issues.push_back({IssueCode::MissingValue, "dataset has no DMU"});
  }

  std::optional<std::set<std::string>> coverage;
  bool coverage_consistent = true;
  bool names_known = true;
  for (const auto& [dmu, levels] : goals.by_dmu) {
    if (!ids.count(dmu)) {
      issues.push_back({IssueCode::UnknownDmu, "goal row for unknown DMU '" + dmu + "'"});
    }
    std::set<std::string> names;
    for (const auto& [name, value] : levels) {
      names.insert(name);
      auto k = schema.index_of(name);
      if (!k) {
        names_known = false;
        issues.push_back({IssueCode::UnknownVariable,
                          "goal for DMU '" + dmu + "' names unknown variable '" + name + "'"});
      } else if (!schema[*k].is_controllable()) {
        issues.push_back({IssueCode::IncoherentGoalCoverage,
                          "goal for DMU '" + dmu + "' is set on non-controllable '" + name + "'"});
      }
      if (!(std::isfinite(value) && value > 0.0)) {
        issues.push_back({IssueCode::NonPositiveValue, "goal for DMU '" + dmu + "' on '" + name +
                                                           "' is non-positive"});
      }
    }
    if (!coverage) {
      coverage = names;
    } else if (*coverage != names) {
      coverage_consistent = false;
    }
  }
  if (!coverage_consistent) {
    issues.push_back({IssueCode::IncoherentGoalCoverage,
                      "goal rows do not all cover the same variables"});
  }

  ModelKind kind = ModelKind::NonOriented;
  if (goals.by_dmu.empty()) {
    issues.push_back({IssueCode::MissingGoalRow, "no DMU carries goals"});
  } else if (coverage_consistent && names_known) {
    auto derived = kind_for_coverage(
        schema, std::vector<std::string>(coverage->begin(), coverage->end()));
    if (derived) {
      kind = *derived;
    } else {
      issues.push_back({IssueCode::IncoherentGoalCoverage,
                        "goals must cover all controllable variables, all controllable "
                        "outputs, or all controllable inputs"});
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));

  ValidatedInstance inst;
  inst.dataset_ = dataset;
  inst.goals_ = goals;
  inst.kind_ = kind;
  for (const auto& name : *coverage) inst.goal_variables_.push_back(*schema.index_of(name));
  std::sort(inst.goal_variables_.begin(), inst.goal_variables_.end());
  inst.representatives_ = duplicate_representatives(dataset);
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    if (inst.representatives_[j] != j) {
      inst.warnings_.push_back("DMU '" + dataset.dmu_ids[j] + "' duplicates '" +
                               dataset.dmu_ids[inst.representatives_[j]] +
                               "'; aliased for frontier construction");
    }
    if (!goals.by_dmu.count(dataset.dmu_ids[j])) {
      inst.warnings_.push_back("DMU '" + dataset.dmu_ids[j] +
                               "' has no goal row; it shapes the frontier but is not benchmarked");
    }
  }
  return inst;
}

}  // namespace goaldea
