#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "goaldea/domain.hpp"

namespace goaldea::support {

struct Shape {
  std::size_t n = 4;
  std::size_t inputs_d = 1;
  std::size_t inputs_nd = 0;
  std::size_t outputs_d = 1;
  std::size_t outputs_nd = 0;
};

/// Inputs (discretionary then fixed) followed by outputs, named x1.., z1..,
/// y1.., w1...
VariableSchema make_schema(const Shape& shape);

/// Draws a shape from n in [4, 8], m_D, s_D in {1, 2}, m_ND, s_ND in {0, 1}.
Shape random_shape(std::mt19937_64& rng);

/// Positive values with outputs loosely increasing in the inputs, so that
/// frontiers have both extreme and interior DMUs.
Dataset random_dataset(std::mt19937_64& rng, const Shape& shape);

/// Goals on the variables made discretionary by `kind`, each the actual
/// level times a factor drawn from [1 - spread, 1 + spread].
GoalVector perturbed_goals(std::mt19937_64& rng, const Dataset& dataset, std::size_t dmu,
                           ModelKind kind, double spread = 0.3);

/// Goals equal to actual levels on the variables discretionary under `kind`.
GoalVector self_goals(const Dataset& dataset, std::size_t dmu, ModelKind kind);

GoalSet goal_set_from(const Dataset& dataset, const std::vector<GoalVector>& per_dmu);

struct Instance {
  std::uint64_t seed = 0;
  Shape shape;
  Dataset dataset;
};

/// `count` independent instances, instance i seeded with base_seed + i.
std::vector<Instance> instance_corpus(std::size_t count, std::uint64_t base_seed);

/// Keeps only the listed schema columns, in order.
Dataset project(const Dataset& dataset, const std::vector<std::size_t>& columns);

}  // namespace goaldea::support
