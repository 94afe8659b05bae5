#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "critns/datagen.hpp"
#include "critns/error.hpp"
#include "critns/norms.hpp"
#include "critns/operators.hpp"
#include "critns/solver.hpp"
#include "test_support.hpp"

using namespace critns;
using solver::Scheme;

namespace {
double rel(const SpectralVectorField& a, const SpectralVectorField& b) {
  return norms::sobolev(a - b, 0.0) / std::max(norms::sobolev(b, 0.0), 1e-300);
}
}  // namespace

TEST(Scheme, NamesRoundTrip) {
  for (auto s : {Scheme::mild_picard, Scheme::imex_if_rk2, Scheme::imex_if_rk4}) {
    EXPECT_EQ(solver::parse_scheme(solver::scheme_name(s)), s);
  }
  EXPECT_THROW(solver::parse_scheme("euler"), InvalidArgument);
}

TEST(StepImex, ZeroAndShear) {
  const Grid g(16);
  EXPECT_EQ(solver::step_imex(SpectralVectorField(g), 1e-2, Scheme::imex_if_rk4).max_abs(), 0.0);
  const auto u = datagen::shear(g, 1.0);
  for (auto s : {Scheme::imex_if_rk2, Scheme::imex_if_rk4}) {
    EXPECT_LT(rel(solver::step_imex(u, 1e-2, s), heat_semigroup(u, 1e-2)), 1e-12);
  }
}

TEST(StepImex, OutputSolenoidal) {
  const Grid g(16);
  const auto u = datagen::random_solenoidal(g, 2, -5.0 / 3.0, 5, 1.0);
  EXPECT_LT(solver::step_imex(u, 1e-3, Scheme::imex_if_rk4).solenoidal_defect(), 1e-12);
}

// ||u||_inf = 5 keeps the local error well above rounding at dt = 1e-3.
TEST(StepImex, FourthOrderRichardson) {
  const Grid g(32);
  const auto u = datagen::taylor_green(g, 5.0);
  const double dt = 1e-3;
  auto advance = [&](int k) {
    SpectralVectorField v = u;
    for (int i = 0; i < k; ++i) v = solver::step_imex(v, dt / k, Scheme::imex_if_rk4);
    return v;
  };
  const auto s1 = advance(1), s2 = advance(2), s4 = advance(4);
  const double ratio = norms::sobolev(s1 - s2, 0.0) / norms::sobolev(s2 - s4, 0.0);
  EXPECT_NEAR(ratio, 16.0, 0.2 * 16.0);
}

TEST(StepImex, NonFiniteInputThrowsWithLastGood) {
  const Grid g(16);
  auto u = datagen::taylor_green(g, 1.0);
  u[0][g.spectral_index(1, 1, 1)] = std::numeric_limits<double>::quiet_NaN();
  try {
    solver::step_imex(u, 1e-3, Scheme::imex_if_rk4);
    FAIL();
  } catch (const solver::BlowupOrInstability& e) {
    EXPECT_EQ(e.last_good().grid(), g);
  }
  EXPECT_THROW(solver::step_imex(u, 0.0, Scheme::imex_if_rk4), InvalidArgument);
}

TEST(RunImex, TaylorGreenEnergyInequality) {
  const Grid g(16);
  solver::RunConfig rc;
  rc.dt = 5e-3;
  rc.t_end = 0.5;
  const auto r = solver::run_imex(datagen::taylor_green(g, 1.0), rc);
  ASSERT_TRUE(r.complete());
  EXPECT_EQ(r.steps_taken, 100);
  for (const auto& s : r.energy) EXPECT_LE(s.defect, 1e-10);
  EXPECT_LT(r.max_solenoidal_defect, 1e-10);
  EXPECT_EQ(r.energy.size(), 11u);
}

TEST(RunImex, PureHeatEquality) {
  const Grid g(16);
  solver::RunConfig rc;
  rc.dt = 1e-2;
  rc.t_end = 1.0;
  const auto r = solver::run_imex(datagen::shear(g, 1.0), rc);
  for (const auto& s : r.energy) EXPECT_LT(std::abs(s.defect), 1e-8 * r.energy.front().energy);
}

TEST(RunImex, RestartReproducesContinuation) {
  const Grid g(16);
  const auto u0 = datagen::random_solenoidal(g, 4, -5.0 / 3.0, 4, 0.5);
  solver::RunConfig full;
  full.dt = 1e-2;
  full.t_end = 0.2;
  solver::RunConfig first = full;
  first.t_end = 0.1;
  solver::RunConfig second = full;
  second.t_start = 0.1;
  const auto a = solver::run_imex(u0, full);
  const auto b = solver::run_imex(solver::run_imex(u0, first).final_state, second);
  EXPECT_LT(rel(b.final_state, a.final_state), 1e-12);
  EXPECT_DOUBLE_EQ(b.final_time, 0.2);
}

TEST(RunImex, TailBlowupStopsWithLabel) {
  const Grid g(16);
  SpectralVectorField u(g);
  u[0][g.spectral_index(0, 5, 0)] = 1.0;
  u[0][g.spectral_index(0, 11, 0)] = 1.0;
  u = leray_project(u);
  EXPECT_NEAR(solver::tail_energy_fraction(u), 1.0, 1e-15);
  solver::RunConfig rc;
  rc.dt = 1e-3;
  rc.t_end = 0.01;
  rc.cadence = 1;
  const auto r = solver::run_imex(u, rc);
  EXPECT_EQ(r.status, "blowup: spectral tail");
  EXPECT_FALSE(r.complete());
}

TEST(RunImex, ScalingConsistency) {
  const Grid g(16);
  const auto u0 = datagen::random_solenoidal(g, 8, -5.0 / 3.0, 4, 0.5);
  const double lambda = 2.0, t = 0.2;
  solver::RunConfig rc;
  rc.dt = 2e-3;
  rc.t_end = t;
  const auto direct = solver::run_imex(u0, rc).final_state;
  solver::RunConfig rs;
  rs.dt = rc.dt / (lambda * lambda);
  rs.t_end = t / (lambda * lambda);
  const auto scaled = solver::run_imex(rescale_field(u0, lambda), rs).final_state;
  const auto back = rescale_field(scaled, 1.0 / lambda);
  ASSERT_EQ(back.grid(), g);
  EXPECT_LT(rel(back, direct), 1e-6);
}

TEST(Picard, DepthZeroIsHeatFlow) {
  const Grid g(16);
  const auto u0 = datagen::taylor_green(g, 1.0);
  const auto pr = solver::picard_mild(u0, 0.1, 0, 1e-2);
  ASSERT_EQ(pr.iterates.size(), 1u);
  EXPECT_LT(rel(pr.final_state(), heat_semigroup(u0, 0.1)), 1e-14);
}

TEST(Picard, ShearIteratesStayLinear) {
  const Grid g(16);
  const auto u0 = datagen::shear(g, 1.0);
  const auto pr = solver::picard_mild(u0, 0.1, 3, 1e-2);
  for (const auto& it : pr.iterates) EXPECT_LT(rel(it.back(), heat_semigroup(u0, 0.1)), 1e-14);
  for (double d : pr.successive_distance) EXPECT_LT(d, 1e-14);
}

TEST(Picard, ContractsAndAgreesWithRk4) {
  const Grid g(16);
  const auto u0 = datagen::taylor_green(g, 0.5);
  const auto pr = solver::picard_mild(u0, 0.1, 5, 1e-3, 100);
  EXPECT_FALSE(pr.diverged);
  for (std::size_t i = 1; i < pr.successive_distance.size(); ++i) {
    EXPECT_LT(pr.successive_distance[i], pr.successive_distance[i - 1]);
  }
  solver::RunConfig rc;
  rc.dt = 1e-3;
  rc.t_end = 0.1;
  EXPECT_LT(rel(pr.final_state(), solver::run_imex(u0, rc).final_state), 1e-6);
}

TEST(SplitLinear, VanishesAtStartAndForHeat) {
  const Grid g(16);
  const auto u0 = datagen::taylor_green(g, 1.0);
  const auto v = solver::split_linear({0.0}, {u0}, u0);
  EXPECT_LE(norms::sobolev(v[0], 1.0), 1e-12);
  const auto heat = solver::split_linear({0.3}, {heat_semigroup(u0, 0.3)}, u0);
  EXPECT_LE(heat[0].max_abs(), 1e-16);
  EXPECT_THROW(solver::split_linear({0.0, 1.0}, {u0}, u0), InvalidArgument);
}
