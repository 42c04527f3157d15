#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "certificate.hpp"
#include "goaldea/errors.hpp"
#include "goaldea/simplex.hpp"

using namespace goaldea;
using namespace goaldea::lp;

namespace {

void expect_certified(const LinearProgram& p, const Solution& s) {
  EXPECT_EQ(support::check_certificate(p, s), "");
  EXPECT_TRUE(verify_certificate(p, s).valid);
}

// Random feasible LP: x0 is a known interior point of the rows.
LinearProgram random_feasible(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_real_distribution<double> pos(0.0, 3.0);
  std::uniform_int_distribution<int> pick(0, 5);
  LinearProgram p;
  std::vector<double> x0;
  for (std::size_t j = 0; j < n; ++j) {
    double lo = 0.0, hi = kInfinity;
    switch (pick(rng)) {
      case 0: lo = -kInfinity; break;
      case 1: lo = -2.0; hi = 4.0; break;
      case 2: lo = 1.0; break;
      case 3: lo = -kInfinity; hi = 3.0; break;
      default: break;
    }
    double x = std::isinf(lo) ? (std::isinf(hi) ? coef(rng) : hi - pos(rng))
                              : (std::isinf(hi) ? lo + pos(rng) : lo + (hi - lo) * 0.5);
    x0.push_back(x);
    p.add_variable("x" + std::to_string(j), lo, hi, coef(rng));
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Term> terms;
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = pick(rng) < 2 ? 0.0 : coef(rng);
      terms.emplace_back(j, a);
      ax += a * x0[j];
    }
    const int r = pick(rng) % 3;
    const Relation rel = r == 0 ? Relation::LessEqual : r == 1 ? Relation::Equal
                                                                : Relation::GreaterEqual;
    const double rhs = rel == Relation::Equal ? ax : rel == Relation::LessEqual ? ax + pos(rng)
                                                                                 : ax - pos(rng);
    p.add_constraint(terms, rel, rhs);
  }
  // A box keeps most problems bounded.
  for (std::size_t j = 0; j < n; ++j) {
    p.add_constraint({{j, 1.0}}, Relation::LessEqual, x0[j] + 10.0);
    p.add_constraint({{j, 1.0}}, Relation::GreaterEqual, x0[j] - 10.0);
  }
  if (pick(rng) < 2) p.sense = Sense::Maximize;
  return p;
}

}  // namespace

TEST(Simplex, MinimizeSingleBound) {
  LinearProgram p;
  p.add_variable("x", -kInfinity, kInfinity, 1.0);
  p.add_constraint({{0, 1.0}}, Relation::GreaterEqual, 3.0);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.values[0], 3.0, 1e-12);
  EXPECT_NEAR(s.objective, 3.0, 1e-12);
  expect_certified(p, s);
}

TEST(Simplex, UnboundedMaximize) {
  LinearProgram p;
  p.sense = Sense::Maximize;
  p.add_variable("x", 0.0, kInfinity, 1.0);
  p.add_constraint({{0, 1.0}}, Relation::GreaterEqual, 0.0);
  EXPECT_EQ(solve(p).status, Status::Unbounded);
}

TEST(Simplex, ContradictoryBoundsInfeasible) {
  LinearProgram p;
  p.add_variable("x", -kInfinity, kInfinity, 0.0);
  p.add_constraint({{0, 1.0}}, Relation::LessEqual, 1.0);
  p.add_constraint({{0, 1.0}}, Relation::GreaterEqual, 2.0);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::Infeasible);
  expect_certified(p, s);
}

TEST(Simplex, InfeasibleVariableBounds) {
  LinearProgram p;
  p.add_variable("x", 0.0, 1.0, 1.0);
  p.add_constraint({{0, 1.0}}, Relation::GreaterEqual, 2.0);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::Infeasible);
  expect_certified(p, s);
}

TEST(Simplex, TextbookMaximize) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  LinearProgram p;
  p.sense = Sense::Maximize;
  p.add_variable("x", 0, kInfinity, 3);
  p.add_variable("y", 0, kInfinity, 5);
  p.add_constraint({{0, 1}}, Relation::LessEqual, 4);
  p.add_constraint({{1, 2}}, Relation::LessEqual, 12);
  p.add_constraint({{0, 3}, {1, 2}}, Relation::LessEqual, 18);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.values[0], 2, 1e-9);
  EXPECT_NEAR(s.values[1], 6, 1e-9);
  EXPECT_NEAR(s.objective, 36, 1e-9);
  expect_certified(p, s);
}

TEST(Simplex, FixedAndNegativeBoundedVariables) {
  LinearProgram p;
  p.add_variable("a", 2.0, 2.0, 1.0);
  p.add_variable("b", -kInfinity, -1.0, -1.0);
  p.add_variable("c", -3.0, 5.0, 1.0);
  p.add_constraint({{0, 1}, {1, 1}, {2, 1}}, Relation::Equal, 0.0);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_DOUBLE_EQ(s.values[0], 2.0);
  EXPECT_LE(s.values[1], -1.0 + 1e-9);
  EXPECT_NEAR(s.values[0] + s.values[1] + s.values[2], 0.0, 1e-9);
  // b = -2 - c <= -1 forces c >= -1; the objective 4 + 2c is least at c = -1.
  EXPECT_NEAR(s.values[2], -1.0, 1e-9);
  EXPECT_NEAR(s.objective, 2.0, 1e-9);
  expect_certified(p, s);
}

TEST(Simplex, DegenerateCyclingExample) {
  // Beale's example cycles under naive largest-coefficient pivoting.
  LinearProgram p;
  p.add_variable("x1", 0, kInfinity, -0.75);
  p.add_variable("x2", 0, kInfinity, 150);
  p.add_variable("x3", 0, kInfinity, -0.02);
  p.add_variable("x4", 0, kInfinity, 6);
  p.add_constraint({{0, 0.25}, {1, -60}, {2, -0.04}, {3, 9}}, Relation::LessEqual, 0);
  p.add_constraint({{0, 0.5}, {1, -90}, {2, -0.02}, {3, 3}}, Relation::LessEqual, 0);
  p.add_constraint({{2, 1}}, Relation::LessEqual, 1);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.objective, -0.05, 1e-9);
  expect_certified(p, s);
}

TEST(Simplex, MalformedProgramRejected) {
  LinearProgram p;
  p.add_variable("x");
  p.add_constraint({{0, std::nan("")}}, Relation::LessEqual, 1.0);
  EXPECT_THROW(p.check(), std::invalid_argument);
  LinearProgram q;
  q.add_variable("x", kInfinity, kInfinity);
  EXPECT_THROW(q.check(), std::invalid_argument);
}

TEST(Simplex, CrossedBoundsInfeasible) {
  LinearProgram p;
  p.add_variable("x", 1.0, 0.0, 1.0);
  EXPECT_EQ(solve(p).status, Status::Infeasible);
}

TEST(SimplexProperty, RandomProgramsCertifiedAndFeasible) {
  std::mt19937_64 rng(2024);
  int optimal = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const std::size_t m = 1 + trial % 5;
    const auto p = random_feasible(rng, n, m);
    const auto s = solve(p);
    ASSERT_NE(s.status, Status::Infeasible) << "trial " << trial;
    if (s.status != Status::Optimal) continue;
    ++optimal;
    EXPECT_LE(max_violation(p, s.values), 1e-7) << "trial " << trial;
    EXPECT_NEAR(objective_value(p, s.values), s.objective, 1e-8) << "trial " << trial;
    EXPECT_EQ(support::check_certificate(p, s), "") << "trial " << trial;
  }
  EXPECT_GT(optimal, 300);
}

TEST(SimplexProperty, RandomInfeasibleProgramsCarryFarkasRay) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_feasible(rng, 2 + trial % 5, 1 + trial % 4);
    // Contradict the box on one variable.
    const std::size_t j = trial % p.num_variables();
    p.add_constraint({{j, 1.0}}, Relation::GreaterEqual, 1e3);
    const auto s = solve(p);
    ASSERT_EQ(s.status, Status::Infeasible) << "trial " << trial;
    EXPECT_EQ(support::check_certificate(p, s), "") << "trial " << trial;
  }
}

TEST(SimplexProperty, Deterministic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_feasible(rng, 6, 4);
    const auto a = solve(p);
    const auto b = solve(p);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.duals, b.duals);
    EXPECT_EQ(a.objective, b.objective);
  }
}
