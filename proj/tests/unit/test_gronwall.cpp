#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "critns/error.hpp"
#include "critns/gronwall.hpp"

using namespace critns;
using namespace critns::gronwall;

namespace {
double beta_fn(double a, double b) { return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b); }

GronwallProblem small(double c1, double c2) {
  GronwallProblem p;
  p.a0 = 1.0;
  p.c1 = c1;
  p.c2 = c2;
  p.horizon = 1.0;
  return p;
}
}  // namespace

TEST(BetaMoment, GammaIdentity) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.5, 0.125}, {0.875, 0.125}, {0.3, 0.6}, {0.0, 0.0}}) {
    EXPECT_NEAR(beta_moment(a, b), beta_fn(1 - a, 1 - b), 1e-12 * beta_fn(1 - a, 1 - b)) << a << " " << b;
  }
  EXPECT_NEAR(beta_moment(0.5, 0.0), 2.0, 1e-14);
  EXPECT_NEAR(beta_moment(0.875, 0.0), 8.0, 1e-13);
}

// int_0^t (t - s)^{-a} s^{-b} s ds = t^{2 - a - b} B(1 - a, 2 - b); piecewise-linear data is integrated exactly.
TEST(SingularConvolution, LinearDataExact) {
  std::vector<double> nodes, values;
  for (int i = 0; i <= 17; ++i) {
    const double s = 1.3 * std::pow(i / 17.0, 2.0);
    nodes.push_back(s);
    values.push_back(s);
  }
  const double t = 1.3;
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.5, 0.125}, {0.875, 0.125}, {0.5, 0.0}}) {
    const double exact = std::pow(t, 2 - a - b) * beta_fn(1 - a, 2 - b);
    EXPECT_NEAR(singular_convolution(nodes, values, a, b, t), exact, 1e-12 * exact);
  }
  const auto w = convolution_weights(nodes, 0.5, 0.125, t);
  double sum = 0.0;
  for (double x : w) sum += x;
  EXPECT_NEAR(sum, std::pow(t, 0.375) * beta_fn(0.5, 0.875), 1e-12);
}

TEST(Problem, JsonRoundTripAndMissingKey) {
  const nlohmann::json j{{"a0", 2.0}, {"c1", 0.1}, {"c2", 0.2}, {"regime", "large_time"}, {"horizon", 3.0}};
  const auto p = problem_from_json(j);
  EXPECT_EQ(p.regime, Regime::large_time);
  EXPECT_DOUBLE_EQ(p.horizon, 3.0);
  const auto back = problem_from_json(nlohmann::json::parse(to_json(p).dump()));
  EXPECT_EQ(to_json(back).dump(), to_json(p).dump());
  nlohmann::json missing = j;
  missing.erase("c2");
  try {
    problem_from_json(missing);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("'c2'"), std::string::npos);
  }
}

TEST(Problem, RegimeHorizonRules) {
  auto p = small(0.1, 0.1);
  p.horizon = 2.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p.regime = Regime::large_time;
  EXPECT_NO_THROW(p.validate());
  p.horizon = 0.5;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(Problem, FrozenQuadraticCoefficient) {
  auto p = small(0.0, 0.5);
  p.frozen_eps = 0.04;
  EXPECT_DOUBLE_EQ(p.effective_c2(), 0.5 + 20.0 * 0.2);
  p.regime = Regime::large_time;
  p.horizon = 2.0;
  EXPECT_DOUBLE_EQ(p.effective_c2(), 0.5 + 16.0 * 0.2);
}

TEST(Extremal, NoForcingIsConstant) {
  const auto sol = solve_extremal(small(0.0, 0.0));
  for (double a : sol.a_values) EXPECT_DOUBLE_EQ(a, 1.0);
  EXPECT_EQ(sol.status, Status::converged);
}

// Large-time regime with a tiny C1: A(t) = a0 (1 + 2 C1 sqrt(t)) + O(C1^2).
TEST(Extremal, FirstOrderInC1) {
  GronwallProblem p;
  p.a0 = 1.0;
  p.c1 = 1e-6;
  p.regime = Regime::large_time;
  p.horizon = 4.0;
  const auto sol = solve_extremal(p);
  const double t = sol.times.back();
  const double correction = 2.0 * p.c1 * std::sqrt(t);
  EXPECT_NEAR(sol.a_values.back(), 1.0 + correction, 1e-5 * correction);
}

TEST(Extremal, MeshRefinementAndRegression) {
  auto p = small(0.1, 0.1);
  std::vector<double> sups;
  for (int n : {100, 200, 400, 800}) {
    p.mesh.intervals = n;
    sups.push_back(solve_extremal(p).sup());
  }
  const double d1 = std::abs(sups[1] - sups[2]), d2 = std::abs(sups[2] - sups[3]);
  EXPECT_LT(d2, d1);
  EXPECT_LT(d2 / sups[3], 1e-4);
  // frozen from the reference build at 400 intervals
  EXPECT_NEAR(sups[2], 9.183203289903744, 1e-9);
}

TEST(Extremal, LargeTimeRegression) {
  GronwallProblem p;
  p.a0 = 1.0;
  p.c1 = 0.1;
  p.c2 = 0.01;
  p.regime = Regime::large_time;
  p.horizon = 4.0;
  p.mesh.grading = 2.0;
  const auto sol = solve_extremal(p);
  EXPECT_EQ(sol.status, Status::converged);
  EXPECT_NEAR(sol.sup(), 1.8578344948924777, 1e-9);
  // the midpoint defect is dominated by the sqrt(t) layer at t = 0 and shrinks under refinement
  p.mesh.intervals *= 4;
  const auto fine = solve_extremal(p);
  EXPECT_LT(fine.residual, 0.6 * sol.residual);
  EXPECT_LT(sol.residual, 5e-3);
}

TEST(Extremal, LargeConstantsDoNotConverge) {
  const auto sol = solve_extremal(small(1.0, 1.0));
  EXPECT_NE(sol.status, Status::converged);
  EXPECT_THROW(sol.require_converged(), NonConvergence);
}

TEST(ExtremalBound, SmallConstantsPassEveryCheck) {
  const auto p = small(1e-3, 1e-3);
  const auto sol = solve_extremal(p);
  const auto lr = verify_extremal_bound(sol, p, 0.05);
  EXPECT_TRUE(lr.all_pass());
  EXPECT_TRUE(lr.nominal_premise_holds);
  EXPECT_EQ(lr.surrogate_status, "checked");
  EXPECT_FALSE(lr.surrogate_doubling.empty());
  EXPECT_LT(lr.log_sup, lr.log_bound);
  EXPECT_NEAR(sol.sup(), 1.0104851702, 1e-9);
}

TEST(ExtremalBound, PremiseValueAndNominalT0) {
  const auto p = small(0.1, 0.2);
  EXPECT_DOUBLE_EQ(premise_value(p, 1.0), 10.0 * 0.3);
  EXPECT_NEAR(nominal_t0(p), 1.0 / (std::pow(20.0, 8) * std::pow(10.1, 8) * std::pow(10.2, 8)), 1e-60);
  auto q = p;
  q.regime = Regime::large_time;
  q.horizon = 4.0;
  EXPECT_DOUBLE_EQ(premise_value(q, 4.0), 8.0 * (0.1 * 2.0 + 0.2 * std::sqrt(2.0)));
}

TEST(ExtremalBound, UnmetPremiseSkipsSurrogate) {
  const auto p = small(0.1, 0.1);
  const auto lr = verify_extremal_bound(solve_extremal(p), p, 0.05);
  EXPECT_EQ(lr.surrogate_status, "premise-not-met, skipped");
  EXPECT_TRUE(lr.bound_holds);
}
