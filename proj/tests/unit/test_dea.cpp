#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "generator.hpp"
#include "goaldea/dea.hpp"
#include "hull_oracle.hpp"

using namespace goaldea;

namespace {

Dataset abcd() {
  Dataset d;
  d.schema = VariableSchema({{"x", VariableKind::Input, Control::Controllable},
                             {"y", VariableKind::Output, Control::Controllable}});
  d.dmu_ids = {"A", "B", "C", "D"};
  d.values = {{1, 1}, {2, 4}, {4, 5}, {3, 2}};
  return d;
}

}  // namespace

TEST(Classification, AbcdExtremeSet) {
  const auto tech = dea::classify_extreme_efficient(abcd());
  EXPECT_EQ(tech.extreme_ids(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(tech.status(3), dea::EfficiencyStatus::Inefficient);
  EXPECT_EQ(support::extreme_by_enumeration(abcd()), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Classification, SingleDmu) {
  Dataset d = abcd();
  d.dmu_ids.resize(1);
  d.values.resize(1);
  const auto tech = dea::classify_extreme_efficient(d);
  EXPECT_EQ(tech.extreme_ids(), std::vector<std::string>{"A"});
}

TEST(Classification, DuplicateOfVertexKeepsVertex) {
  Dataset d = abcd();
  d.dmu_ids.push_back("B2");
  d.values.push_back({2, 4});
  const auto tech = dea::classify_extreme_efficient(d);
  EXPECT_EQ(tech.extreme_ids(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(tech.status(4), dea::EfficiencyStatus::Efficient);
}

TEST(Classification, NonExtremeEfficientOnSegment) {
  Dataset d = abcd();
  d.dmu_ids.push_back("M");
  d.values.push_back({1.5, 2.5});
  const auto tech = dea::classify_extreme_efficient(d);
  EXPECT_FALSE(tech.is_extreme(4));
  EXPECT_EQ(tech.status(4), dea::EfficiencyStatus::Efficient);
}

TEST(ClassificationProperty, AgreesWithHullEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = support::random_dataset(rng, support::random_shape(rng));
    const auto tech = dea::classify_extreme_efficient(d);
    EXPECT_EQ(tech.extreme(), support::extreme_by_enumeration(d)) << "trial " << trial;
  }
}

TEST(ClassificationProperty, RowOrderAndColumnScaleInvariant) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> factor(1e-3, 1e3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = support::random_dataset(rng, support::random_shape(rng));
    const auto base = dea::classify_extreme_efficient(d).extreme_ids();
    std::vector<std::size_t> perm(d.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Dataset shuffled = d;
    for (std::size_t j = 0; j < d.size(); ++j) {
      shuffled.dmu_ids[j] = d.dmu_ids[perm[j]];
      shuffled.values[j] = d.values[perm[j]];
    }
    auto ids = dea::classify_extreme_efficient(shuffled).extreme_ids();
    std::sort(ids.begin(), ids.end());
    auto sorted = base;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(ids, sorted);
    Dataset scaled = d;
    for (std::size_t k = 0; k < d.schema.size(); ++k) {
      const double f = factor(rng);
      for (auto& row : scaled.values) row[k] *= f;
    }
    EXPECT_EQ(dea::classify_extreme_efficient(scaled).extreme_ids(), base);
  }
}

TEST(ClassificationProperty, NonExtremeSpannedByExtreme) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = support::random_dataset(rng, support::random_shape(rng));
    const auto tech = dea::classify_extreme_efficient(d);
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (tech.status(j) != dea::EfficiencyStatus::Inefficient) {
        EXPECT_TRUE(dea::strong_efficiency_test(tech, d.values[j]));
      }
      EXPECT_TRUE(dea::pps_membership(d, tech.extreme(), d.values[j]));
    }
  }
}

TEST(Membership, OwnRowMidpointAndExcess) {
  const auto d = abcd();
  EXPECT_TRUE(dea::pps_membership(d, d.values[3]));
  EXPECT_TRUE(dea::pps_membership(d, {1.5, 2.5}));
  EXPECT_FALSE(dea::pps_membership(d, {100.0, 6.0}));
  EXPECT_FALSE(dea::pps_membership(d, {0.5, 1.0}));
}

TEST(Attainability, SelfGoalsAndExcessiveGoals) {
  const auto d = abcd();
  GoalSet self;
  self.by_dmu["D"] = {{"x", 3}, {"y", 2}};
  EXPECT_TRUE(dea::goal_attainability(d, "D", self));
  GoalSet high;
  high.by_dmu["D"] = {{"y", 9}};
  EXPECT_FALSE(dea::goal_attainability(d, "D", high));
  GoalSet abcd_goals;
  abcd_goals.by_dmu["D"] = {{"x", 2.5}, {"y", 4.5}};
  EXPECT_FALSE(dea::goal_attainability(d, "D", abcd_goals));
  EXPECT_THROW(dea::goal_attainability(d, "A", abcd_goals), ValidationError);
}

TEST(StrongEfficiency, VertexDominatedAndMidpoint) {
  const auto tech = dea::classify_extreme_efficient(abcd());
  EXPECT_TRUE(dea::strong_efficiency_test(tech, {2, 4}));
  EXPECT_FALSE(dea::strong_efficiency_test(tech, {3, 2}));
  EXPECT_TRUE(dea::strong_efficiency_test(tech, {1.5, 2.5}));
  // Weakly efficient: same output as C with more input.
  EXPECT_FALSE(dea::strong_efficiency_test(tech, {5, 5}));
}

TEST(StrongEfficiency, OrientedSection) {
  const auto tech = dea::classify_extreme_efficient(abcd());
  const std::vector<Role> oriented{Role::FixedInput, Role::DiscretionaryOutput};
  // With input held at 3 the best output is 4.5, so (3, 4.5) is efficient
  // in the section while (3, 4) is not.
  EXPECT_TRUE(dea::strong_efficiency_test(tech, {3, 4.5}, oriented));
  EXPECT_FALSE(dea::strong_efficiency_test(tech, {3, 4}, oriented));
}
