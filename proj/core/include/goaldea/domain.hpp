#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goaldea/errors.hpp"

namespace goaldea {

enum class VariableKind { Input, Output };
enum class Control { Controllable, NonControllable };

struct VariableSpec {
  std::string name;
  VariableKind kind = VariableKind::Input;
  Control control = Control::Controllable;

  bool is_input() const noexcept { return kind == VariableKind::Input; }
  bool is_output() const noexcept { return kind == VariableKind::Output; }
  bool is_controllable() const noexcept { return control == Control::Controllable; }

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

/// Ordered list of named variables. The order fixes column positions in
/// every value vector used across the library.
class VariableSchema {
 public:
  VariableSchema() = default;
  explicit VariableSchema(std::vector<VariableSpec> entries) : entries_(std::move(entries)) {}

  const std::vector<VariableSpec>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const VariableSpec& operator[](std::size_t i) const { return entries_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Schema positions with the given kind (and control, when given), in schema order.
  std::vector<std::size_t> indices(VariableKind kind) const;
  std::vector<std::size_t> indices(VariableKind kind, Control control) const;
  std::vector<std::size_t> controllable() const;

  /// Inputs first, then outputs, each block in schema order.
  std::vector<std::size_t> report_order() const;

  /// Structural problems: duplicate or empty names, no input, no output,
  /// nothing controllable.
  std::vector<Issue> check() const;

  friend bool operator==(const VariableSchema&, const VariableSchema&) = default;

 private:
  std::vector<VariableSpec> entries_;
};

/// Observed performance of every DMU. `values[j][k]` is the level of schema
/// variable k for DMU j.
struct Dataset {
  VariableSchema schema;
  std::vector<std::string> dmu_ids;
  std::vector<std::vector<double>> values;

  std::size_t size() const noexcept { return dmu_ids.size(); }
  std::optional<std::size_t> index_of(std::string_view dmu) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Goal levels keyed by DMU id, then by variable name.
struct GoalSet {
  std::map<std::string, std::map<std::string, double>> by_dmu;

  bool empty() const noexcept { return by_dmu.empty(); }

  friend bool operator==(const GoalSet&, const GoalSet&) = default;
};

/// Goal levels for a single DMU aligned with the schema; empty where the
/// variable carries no goal.
using GoalVector = std::vector<std::optional<double>>;

enum class ModelKind { NonOriented, OutputOriented, InputOriented };

const char* to_string(ModelKind kind) noexcept;
std::optional<ModelKind> model_kind_from_string(std::string_view text);

/// How a variable participates in a benchmarking model. Discretionary
/// variables carry goals and deviations; fixed ones are held at actual
/// levels (non-controllables, and the unoriented side of oriented models).
enum class Role { DiscretionaryInput, FixedInput, DiscretionaryOutput, FixedOutput };

bool is_input(Role role) noexcept;
bool is_discretionary(Role role) noexcept;

std::vector<Role> roles_for(ModelKind kind, const VariableSchema& schema);

/// Classify goal coverage. Returns nullopt for coverage other than all
/// controllables, all controllable outputs, or all controllable inputs.
/// Coverage of every controllable variable is NonOriented even when one
/// side has no controllable variables at all.
std::optional<ModelKind> kind_for_coverage(const VariableSchema& schema,
                                           const std::vector<std::string>& covered);

class AlphaGrid {
 public:
  /// {1, 0.8, 0.6, 0.5, 0.4, 0.2, 0}
  static AlphaGrid standard();

  /// Throws std::invalid_argument on values outside [0, 1], NaN, or duplicates.
  explicit AlphaGrid(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  friend bool operator==(const AlphaGrid&, const AlphaGrid&) = default;

 private:
  std::vector<double> values_;
};

/// For each DMU the index of the first DMU with a bitwise identical row.
std::vector<std::size_t> duplicate_representatives(const Dataset& dataset);

class ValidatedInstance {
 public:
  const Dataset& dataset() const noexcept { return dataset_; }
  const VariableSchema& schema() const noexcept { return dataset_.schema; }
  const GoalSet& goals() const noexcept { return goals_; }
  ModelKind kind() const noexcept { return kind_; }

  /// Schema positions carrying goals.
  const std::vector<std::size_t>& goal_variables() const noexcept { return goal_variables_; }

  /// DMUs with goal rows, in dataset order.
  std::vector<std::string> benchmark_dmus() const;

  /// Throws ValidationError(MissingGoalRow) / ValidationError(UnknownDmu).
  GoalVector goal_vector(std::string_view dmu) const;

  const std::vector<std::size_t>& representatives() const noexcept { return representatives_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  friend bool operator==(const ValidatedInstance&, const ValidatedInstance&) = default;

 private:
  friend ValidatedInstance validate(const Dataset& dataset, const GoalSet& goals);

  Dataset dataset_;
  GoalSet goals_;
  ModelKind kind_ = ModelKind::NonOriented;
  std::vector<std::size_t> goal_variables_;
  std::vector<std::size_t> representatives_;
  std::vector<std::string> warnings_;
};

/// Checks every structural invariant and throws a ValidationError listing
/// all violations at once.
ValidatedInstance validate(const Dataset& dataset, const GoalSet& goals);

/// Throws ValidationError(IncoherentGoalCoverage) when coverage is mixed.
ModelKind derive_model_kind(const VariableSchema& schema, const GoalSet& goals);

/// Goals for `dmu` aligned with the schema. Throws on unknown names.
GoalVector goal_vector_for(const VariableSchema& schema, const GoalSet& goals,
                           std::string_view dmu);

/// The DMU's actual levels where no goal is set, goal levels elsewhere.
std::vector<double> composite_point(const std::vector<double>& actual, const GoalVector& goals);

}  // namespace goaldea
