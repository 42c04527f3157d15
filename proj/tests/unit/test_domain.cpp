#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "generator.hpp"
#include "goaldea/domain.hpp"

using namespace goaldea;

namespace {

VariableSpec in(const char* name, Control c = Control::Controllable) {
  return {name, VariableKind::Input, c};
}
VariableSpec out(const char* name, Control c = Control::Controllable) {
  return {name, VariableKind::Output, c};
}

Dataset tiny() {
  Dataset d;
  d.schema = VariableSchema({in("x"), out("y")});
  d.dmu_ids = {"A", "B", "C"};
  d.values = {{1, 1}, {2, 4}, {4, 5}};
  return d;
}

IssueCode first_code(const Dataset& d, const GoalSet& g) {
  try {
    validate(d, g);
  } catch (const ValidationError& e) {
    return e.issues().front().code;
  }
  ADD_FAILURE() << "validation passed";
  return IssueCode::InvalidSchema;
}

}  // namespace

TEST(Validate, MinimalOutputGoalsGiveOutputOriented) {
  GoalSet g;
  for (const char* id : {"A", "B", "C"}) g.by_dmu[id]["y"] = 3.0;
  const auto inst = validate(tiny(), g);
  EXPECT_EQ(inst.kind(), ModelKind::OutputOriented);
  EXPECT_EQ(inst.benchmark_dmus().size(), 3u);
  EXPECT_TRUE(inst.warnings().empty());
}

TEST(Validate, ZeroInputIsNonPositive) {
  Dataset d = tiny();
  d.values[1][0] = 0.0;
  GoalSet g;
  g.by_dmu["A"]["y"] = 1.0;
  EXPECT_EQ(first_code(d, g), IssueCode::NonPositiveValue);
}

TEST(Validate, PartialOutputCoverageIsIncoherent) {
  Dataset d;
  d.schema = VariableSchema({in("x"), out("y1"), out("y2")});
  d.dmu_ids = {"A", "B"};
  d.values = {{1, 1, 1}, {2, 2, 2}};
  GoalSet g;
  g.by_dmu["A"]["y1"] = 1.0;
  EXPECT_EQ(first_code(d, g), IssueCode::IncoherentGoalCoverage);
}

TEST(Validate, ReportsEveryViolation) {
  Dataset d = tiny();
  d.dmu_ids[2] = "A";
  d.values[0][1] = -1.0;
  GoalSet g;
  g.by_dmu["B"]["nope"] = 1.0;
  try {
    validate(d, g);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.has(IssueCode::DuplicateDmu));
    EXPECT_TRUE(e.has(IssueCode::NonPositiveValue));
    EXPECT_TRUE(e.has(IssueCode::UnknownVariable));
  }
}

TEST(Validate, EmptyGoalsAreMissingGoalRow) {
  EXPECT_EQ(first_code(tiny(), GoalSet{}), IssueCode::MissingGoalRow);
}

TEST(Validate, GoalsOnNonControllableRejected) {
  Dataset d;
  d.schema = VariableSchema({in("x"), in("z", Control::NonControllable), out("y")});
  d.dmu_ids = {"A", "B"};
  d.values = {{1, 1, 1}, {2, 2, 2}};
  GoalSet g;
  g.by_dmu["A"]["y"] = 1.0;
  g.by_dmu["A"]["z"] = 1.0;
  EXPECT_EQ(first_code(d, g), IssueCode::IncoherentGoalCoverage);
}

TEST(Validate, NonPositiveGoalRejected) {
  GoalSet g;
  g.by_dmu["A"]["y"] = 0.0;
  EXPECT_EQ(first_code(tiny(), g), IssueCode::NonPositiveValue);
}

TEST(Validate, DifferentGoalNamesAcrossDmusRejected) {
  Dataset d;
  d.schema = VariableSchema({in("x"), out("y")});
  d.dmu_ids = {"A", "B"};
  d.values = {{1, 1}, {2, 2}};
  GoalSet g;
  g.by_dmu["A"]["y"] = 1.0;
  g.by_dmu["B"]["x"] = 1.0;
  g.by_dmu["B"]["y"] = 1.0;
  EXPECT_EQ(first_code(d, g), IssueCode::IncoherentGoalCoverage);
}

TEST(Validate, GoalRowForUnknownDmu) {
  GoalSet g;
  g.by_dmu["Z"]["y"] = 1.0;
  EXPECT_EQ(first_code(tiny(), g), IssueCode::UnknownDmu);
}

TEST(Validate, DmusWithoutGoalsWarned) {
  GoalSet g;
  g.by_dmu["B"]["y"] = 4.0;
  const auto inst = validate(tiny(), g);
  EXPECT_EQ(inst.benchmark_dmus(), std::vector<std::string>{"B"});
  EXPECT_EQ(inst.warnings().size(), 2u);
}

TEST(Validate, DuplicateRowsShareRepresentative) {
  Dataset d = tiny();
  d.dmu_ids.push_back("D");
  d.values.push_back({2, 4});
  GoalSet g;
  for (const char* id : {"A", "B", "C", "D"}) g.by_dmu[id]["y"] = 3.0;
  const auto inst = validate(d, g);
  EXPECT_EQ(inst.representatives(), (std::vector<std::size_t>{0, 1, 2, 1}));
  EXPECT_EQ(inst.warnings().size(), 1u);
}

TEST(Validate, Idempotent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto shape = support::random_shape(rng);
    const auto d = support::random_dataset(rng, shape);
    std::vector<GoalVector> goals;
    for (std::size_t j = 0; j < d.size(); ++j) {
      goals.push_back(support::perturbed_goals(rng, d, j, ModelKind::NonOriented));
    }
    const auto once = validate(d, support::goal_set_from(d, goals));
    const auto twice = validate(once.dataset(), once.goals());
    EXPECT_EQ(once, twice);
  }
}

TEST(ModelKindDerivation, UniversityOutputGoals) {
  VariableSchema s({in("SIZE", Control::NonControllable), in("ASTAFF"), in("EXPEND"), out("GRAD"),
                    out("RET"), out("PROG")});
  GoalSet g;
  g.by_dmu["UZA"] = {{"GRAD", 2600}, {"RET", 5300}, {"PROG", 1130000}};
  EXPECT_EQ(derive_model_kind(s, g), ModelKind::OutputOriented);
}

TEST(ModelKindDerivation, AllControllablesAndInputsOnly) {
  VariableSchema s({in("x1"), in("x2"), out("y")});
  GoalSet all;
  all.by_dmu["A"] = {{"x1", 1}, {"x2", 1}, {"y", 1}};
  EXPECT_EQ(derive_model_kind(s, all), ModelKind::NonOriented);
  GoalSet inputs;
  inputs.by_dmu["A"] = {{"x1", 1}, {"x2", 1}};
  EXPECT_EQ(derive_model_kind(s, inputs), ModelKind::InputOriented);
}

TEST(ModelKindDerivation, PermutationInvariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto shape = support::random_shape(rng);
    const auto schema = support::make_schema(shape);
    for (auto kind : {ModelKind::NonOriented, ModelKind::OutputOriented, ModelKind::InputOriented}) {
      const auto roles = roles_for(kind, schema);
      GoalSet g;
      for (std::size_t k = 0; k < schema.size(); ++k) {
        if (is_discretionary(roles[k])) g.by_dmu["A"][schema[k].name] = 1.0;
      }
      auto entries = schema.entries();
      std::shuffle(entries.begin(), entries.end(), rng);
      EXPECT_EQ(derive_model_kind(schema, g), kind);
      EXPECT_EQ(derive_model_kind(VariableSchema(entries), g), kind);
    }
  }
}

TEST(Roles, OrientationFixesTheOtherSide) {
  VariableSchema s({in("x"), in("z", Control::NonControllable), out("y"),
                    out("w", Control::NonControllable)});
  EXPECT_EQ(roles_for(ModelKind::NonOriented, s),
            (std::vector<Role>{Role::DiscretionaryInput, Role::FixedInput,
                               Role::DiscretionaryOutput, Role::FixedOutput}));
  EXPECT_EQ(roles_for(ModelKind::OutputOriented, s),
            (std::vector<Role>{Role::FixedInput, Role::FixedInput, Role::DiscretionaryOutput,
                               Role::FixedOutput}));
  EXPECT_EQ(roles_for(ModelKind::InputOriented, s),
            (std::vector<Role>{Role::DiscretionaryInput, Role::FixedInput, Role::FixedOutput,
                               Role::FixedOutput}));
}

TEST(Schema, StructuralChecks) {
  EXPECT_FALSE(VariableSchema({in("x")}).check().empty());
  EXPECT_FALSE(VariableSchema({in("x"), out("x")}).check().empty());
  EXPECT_FALSE(VariableSchema({in("x", Control::NonControllable),
                               out("y", Control::NonControllable)})
                   .check()
                   .empty());
  EXPECT_TRUE(VariableSchema({in("x"), out("y")}).check().empty());
  VariableSchema s({out("y"), in("x"), out("w"), in("z")});
  EXPECT_EQ(s.report_order(), (std::vector<std::size_t>{1, 3, 0, 2}));
}

TEST(AlphaGridTest, StandardAndInvalid) {
  EXPECT_EQ(AlphaGrid::standard().values(),
            (std::vector<double>{1, 0.8, 0.6, 0.5, 0.4, 0.2, 0}));
  EXPECT_THROW(AlphaGrid({1.5}), std::invalid_argument);
  EXPECT_THROW(AlphaGrid({-0.1}), std::invalid_argument);
  EXPECT_THROW(AlphaGrid({0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(AlphaGrid({}), std::invalid_argument);
  EXPECT_NO_THROW(AlphaGrid({0, 1}));
}

TEST(CompositePoint, GoalsReplaceActuals) {
  EXPECT_EQ(composite_point({1, 2, 3}, {std::nullopt, 5.0, std::nullopt}),
            (std::vector<double>{1, 5, 3}));
}
