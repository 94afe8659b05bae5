#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "critns/datagen.hpp"
#include "critns/error.hpp"
#include "critns/log.hpp"
#include "critns/norms.hpp"
#include "critns/operators.hpp"
#include "test_support.hpp"

using namespace critns;
namespace ct = critns::test;

namespace {
double rel(const SpectralVectorField& a, const SpectralVectorField& b) {
  return norms::sobolev(a - b, 0.0) / std::max(norms::sobolev(b, 0.0), 1e-300);
}
}  // namespace

TEST(Leray, IdempotentAndSolenoidal) {
  const Grid g(16);
  const auto u = ct::random_vector(g, 1);
  const auto p = leray_project(u);
  EXPECT_LT(rel(leray_project(p), p), 1e-13);
  EXPECT_LT(p.solenoidal_defect(), 1e-14);
  EXPECT_TRUE(p.solenoidal_checked());
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(p[c][0], u[c][0]);
}

TEST(Leray, AnnihilatesGradients) {
  const Grid g(16, 3.0);
  const auto grad = gradient(ct::random_scalar(g, 2));
  EXPECT_LT(norms::sobolev(leray_project(grad), 0.0), 1e-13 * norms::sobolev(grad, 0.0));
}

TEST(Heat, SingleModeDecay) {
  const Grid g(16);
  SpectralVectorField u(g);
  const std::size_t idx = g.spectral_index(2, 1, 3);
  u[1][idx] = {1.0, 0.5};
  const auto h = heat_semigroup(u, 0.07);
  EXPECT_NEAR(std::abs(h[1][idx]) / std::abs(u[1][idx]), std::exp(-14.0 * 0.07), 1e-15);
  EXPECT_THROW(heat_semigroup(u, -1.0), InvalidArgument);
  EXPECT_THROW(heat_semigroup(u, std::nan("")), InvalidArgument);
}

TEST(FractionalLaplacian, InversePairAndMeanRule) {
  const Grid g(16);
  const auto u = ct::without_mean(ct::random_vector(g, 4));
  EXPECT_LT(rel(fractional_laplacian(fractional_laplacian(u, 0.3), -0.3), u), 1e-13);
  EXPECT_LT(rel(fractional_laplacian(u, 0.0), u), 1e-15);
  EXPECT_THROW(fractional_laplacian(ct::random_vector(g, 4), -0.5), NegativeOrderOnMeanfulField);
  const auto lap = fractional_laplacian(u, 1.0);
  auto neg = laplacian(u);
  neg *= -1.0;
  EXPECT_LT(rel(lap, neg), 1e-14);
}

TEST(Dealias, SphericalTwoThirdsBall) {
  const Grid g(32);
  EXPECT_TRUE(in_dealiased_band(g, 10, 0, 0));
  EXPECT_FALSE(in_dealiased_band(g, 11, 0, 0));
  EXPECT_TRUE(in_dealiased_band(g, 6, 6, 32 - 6));
  EXPECT_FALSE(in_dealiased_band(g, 7, 7, 6));
}

TEST(Nonlinear, ShearIsSteady) {
  const Grid g(16);
  const auto nu = nonlinear_term(datagen::shear(g, 2.0));
  EXPECT_LT(nu.max_abs(), 1e-15);
}

TEST(Nonlinear, AgreesWithAdvectiveFormForSolenoidalFields) {
  const Grid g(32);
  const auto u = datagen::taylor_green(g, 1.0);
  auto adv = advective_terms(u, u);
  adv *= -1.0;
  EXPECT_LT(rel(nonlinear_term(u), adv), 1e-13);
}

// -(u.grad)u for Taylor-Green is (-sin 2x cos^2 z / 2, -sin 2y cos^2 z / 2, 0).
TEST(Nonlinear, TaylorGreenClosedForm) {
  const Grid g(16);
  const auto nu = nonlinear_term(datagen::taylor_green(g, 1.0)).to_physical();
  double err = 0.0;
  for (std::size_t i3 = 0; i3 < g.n(); ++i3) {
    for (std::size_t i2 = 0; i2 < g.n(); ++i2) {
      for (std::size_t i1 = 0; i1 < g.n(); ++i1) {
        const double x = g.coordinate(i1), y = g.coordinate(i2), z = g.coordinate(i3);
        const double c2 = std::cos(z) * std::cos(z);
        const double n1 = -0.5 * std::sin(2 * x) * c2;
        const double n2 = -0.5 * std::sin(2 * y) * c2;
        const std::size_t q = g.real_index(i3, i2, i1);
        err = std::max({err, std::abs(nu[0][q] - n1), std::abs(nu[1][q] - n2), std::abs(nu[2][q])});
      }
    }
  }
  EXPECT_LT(err, 1e-14);
}

TEST(Nonlinear, WarnsOnNonSolenoidalInput) {
  const Grid g(16);
  std::string seen;
  const auto old = set_warning_handler([&](const std::string& m) { seen = m; });
  (void)nonlinear_term(ct::random_vector(g, 9));
  set_warning_handler(old);
  EXPECT_NE(seen.find("not solenoidal"), std::string::npos);
}

TEST(Rescale, FieldAndBox) {
  const Grid g(16);
  const auto u = datagen::taylor_green(g, 1.0);
  const auto r = rescale_field(u, 2.0);
  EXPECT_DOUBLE_EQ(r.grid().period(), g.period() / 2.0);
  EXPECT_DOUBLE_EQ(r[0][g.spectral_index(1, 1, 1)].real(), 2.0 * u[0][g.spectral_index(1, 1, 1)].real());
  EXPECT_THROW(rescale_field(u, 0.0), IncompatibleScaling);
  EXPECT_THROW(rescale_field(u, -2.0), IncompatibleScaling);

  const auto b = rescale_in_box(u, 2.0);
  const double a = norms::lebesgue(b, std::numeric_limits<double>::infinity());
  EXPECT_NEAR(a, 2.0, 1e-12);
  EXPECT_NEAR(b[0][g.spectral_index(2, 2, 2)].real(), 2.0 * u[0][g.spectral_index(1, 1, 1)].real(), 1e-15);
  EXPECT_THROW(rescale_in_box(u, 1.5), IncompatibleScaling);
  EXPECT_THROW(rescale_in_box(u, 8.0), IncompatibleScaling);
}

TEST(GradientPhysical, LayoutIsRowMajor) {
  const Grid g(16);
  // u = (0, sin x, 0): only d_1 u_2 = cos x is nonzero, slot 3*1 + 0.
  SpectralVectorField u(g);
  u[1] = SpectralScalarField::from_physical(PhysicalField::sample(g, [](double x, double, double) { return std::sin(x); }));
  const auto grad = gradient_physical(u);
  for (int s = 0; s < 9; ++s) {
    double m = 0.0;
    for (std::size_t q = 0; q < g.real_size(); ++q) m = std::max(m, std::abs(grad[s][q]));
    EXPECT_NEAR(m, s == 3 ? 1.0 : 0.0, 1e-14) << "slot " << s;
  }
}
