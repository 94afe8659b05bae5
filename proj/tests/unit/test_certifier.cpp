#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "critns/certifier.hpp"
#include "critns/datagen.hpp"
#include "critns/error.hpp"
#include "critns/norms.hpp"
#include "critns/operators.hpp"
#include "test_support.hpp"

using namespace critns;

namespace {
cert::CertifierConfig lean() {
  cert::CertifierConfig c;
  c.critical_context = false;
  return c;
}
}  // namespace

TEST(CertifierConfig, Validation) {
  cert::CertifierConfig c;
  EXPECT_NO_THROW(c.validate());
  c.quadrature_order = 5;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.gamma = 0.3;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.t_grid.t_min = 2.0;
  c.t_grid.t_max = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(U0Source, MatchesNegatedNonlinearTermOfHeatFlow) {
  const Grid g(16);
  const auto u0 = datagen::random_solenoidal(g, 3, -2.0, 4, 1.0);
  auto expected = nonlinear_term(heat_semigroup(u0, 0.1));
  expected *= -1.0;
  const auto src = cert::build_u0_source(u0, 0.1);
  EXPECT_LT(norms::sobolev(src - expected, 0.0), 1e-15);
  EXPECT_TRUE(src.is_mean_free());
  EXPECT_THROW(cert::build_u0_source(test::random_vector(g, 1), 0.1), InvalidArgument);
}

TEST(Certify, ZeroDatum) {
  const Grid g(16);
  const auto r = cert::certify(SpectralVectorField(g), cert::CertifierConfig{});
  EXPECT_EQ(r.lhs_total, 0.0);
  EXPECT_TRUE(r.passes_practical);
  EXPECT_TRUE(r.passes_exact);
  EXPECT_TRUE(std::isinf(r.log_lhs) && r.log_lhs < 0);
}

// U0(t) = e^{-6t} U0(0) for Taylor-Green, with ||U0(0)||_{H^-1}^2 = 5 l^3 / 256 and
// ||U0(0)||_{L^2}^2 = 3 l^3 / 32 for unit amplitude.
TEST(Certify, TaylorGreenClosedForm) {
  const Grid g(32);
  const auto r = cert::condition_lhs(datagen::taylor_green(g, 1.0), lean());
  const double vol = g.volume();
  const double h = std::sqrt(5.0 * vol / 256.0);
  const double sup_exact = std::pow(1.0 / 48.0, 0.125) * std::exp(-0.125) * h;
  const double l2l2_exact = std::sqrt((1.0 - std::exp(-12.0)) / 12.0 * 3.0 * vol / 32.0);
  EXPECT_LE(r.sup_term, sup_exact * (1.0 + 1e-12));
  EXPECT_NEAR(r.sup_term, sup_exact, 1e-3 * sup_exact);
  EXPECT_NEAR(r.l2l2_term, l2l2_exact, 1e-10 * l2l2_exact);
  EXPECT_TRUE(r.left_decay);
  EXPECT_TRUE(r.right_decay);
  // regression, frozen from the reference build
  EXPECT_NEAR(r.lhs_total, 2.5893343418436952, 1e-12);
}

TEST(Certify, HomogeneityOfDegreeTwo) {
  const Grid g(16);
  const auto u0 = datagen::random_solenoidal(g, 11, -5.0 / 3.0, 5, 0.3);
  const double base = cert::condition_lhs(u0, lean()).lhs_total;
  for (double a : {0.1, 2.5}) {
    EXPECT_NEAR(cert::condition_lhs(a * u0, lean()).lhs_total, a * a * base, 1e-10 * a * a * base);
  }
}

TEST(Certify, ReportIsDeterministicAndComplete) {
  const Grid g(16);
  const auto u0 = datagen::taylor_green(g, 0.01);
  const auto a = cert::to_json(cert::certify(u0, cert::CertifierConfig{}));
  const auto b = cert::to_json(cert::certify(u0, cert::CertifierConfig{}));
  EXPECT_EQ(a.dump(), b.dump());
  for (const char* key : {"sup_term", "l2l2_term", "lhs_total", "m0", "log_epsilon0", "tstar_used",
                          "passes_exact", "passes_practical", "critical_norm_context"}) {
    EXPECT_TRUE(a.contains(key)) << key;
  }
  EXPECT_FALSE(a["passes_exact"].get<bool>());
  EXPECT_DOUBLE_EQ(a["m0"].get<double>(), 0.02);
}

TEST(LogEpsilon0, ExactAndGuarded) {
  EXPECT_EQ(cert::log_epsilon0(0.0, 1.0), -2.0 * 208827064576.0 * 25600000000.0 * 1e8);
  EXPECT_NEAR(cert::log_epsilon0(0.0, 1.0), -1.06919457062912e30, 1e16);
  EXPECT_EQ(cert::log_epsilon0(0.0, 2.0), 2.0 * cert::log_epsilon0(0.0, 1.0));
  // (m0 + 10)^8 with m0 = 10 is 2^8 times the m0 = 0 value
  EXPECT_EQ(cert::log_epsilon0(10.0, 1.0), 256.0 * cert::log_epsilon0(0.0, 1.0));
  EXPECT_THROW(cert::log_epsilon0(std::nan(""), 1.0), InvalidArgument);
  EXPECT_THROW(cert::log_epsilon0(-1.0, 1.0), InvalidArgument);
  EXPECT_THROW(cert::log_epsilon0(0.0, 0.0), InvalidArgument);
}

TEST(Tstar, ForwardAndLogMaps) {
  EXPECT_DOUBLE_EQ(cert::tstar_from(2.0, 0.25), 16.0);
  EXPECT_NEAR(cert::log_tstar_from_log_epsilon0(2.0, std::log(0.25)), std::log(16.0), 1e-15);
  EXPECT_THROW(cert::tstar_from(1.0, 0.0), InvalidArgument);
}

TEST(Bisection, PracticalBoundaryMatchesHomogeneity) {
  const Grid g(16);
  const auto cfg = lean();
  const double lhs1 = cert::condition_lhs(datagen::taylor_green(g, 1.0), cfg).lhs_total;
  const double boundary = cert::bisect_boundary(
      [&](double a) { return cert::certify(datagen::taylor_green(g, a), cfg).passes_practical; }, 1e-3, 1.0, 1e-9);
  EXPECT_NEAR(boundary, std::sqrt(cfg.practical_threshold / lhs1), 1e-7 * boundary);
  EXPECT_THROW(cert::bisect_boundary([](double) { return false; }, 0.1, 1.0), InvalidArgument);
}

TEST(CgSmallness, QuadraticLhsAndReportedRatio) {
  const Grid g(16);
  const auto u0 = datagen::taylor_green(g, 0.1);
  const norms::TimeGrid tg{1e-4, 10.0, 16};
  const auto a = cert::cg_nonlinear_smallness(u0, 1.0, tg);
  const auto b = cert::cg_nonlinear_smallness(2.0 * u0, 1.0, tg);
  EXPECT_NEAR(b.lhs, 4.0 * a.lhs, 1e-12 * b.lhs);
  EXPECT_NEAR(a.ratio, a.lhs / a.rhs, 1e-15);
  EXPECT_EQ(a.label, "surrogate-E");
  EXPECT_NEAR(a.log_rhs, -std::pow(a.besov_m1_inf_2, 4), 1e-14);
  EXPECT_THROW(cert::cg_nonlinear_smallness(u0, 0.0, tg), InvalidArgument);
}
