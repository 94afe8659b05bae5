#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "critns/heat_kernel.hpp"

using namespace critns;

TEST(HeatKernel, UnitMass) {
  for (double t : {1e-3, 0.5, 7.0}) EXPECT_NEAR(heat_kernel_mass(t), 1.0, 1e-12) << t;
}

TEST(HeatKernel, PointValues) {
  const auto v = heat_kernel_values(0.25, {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
  const double c = std::pow(4.0 * std::numbers::pi * 0.25, -1.5);
  EXPECT_NEAR(v[0], c, 1e-15 * c);
  EXPECT_NEAR(v[1], c * std::exp(-1.0), 1e-15 * c);
}

// Near the origin the profile tends to (2 pi^2)^{-1} int rho^3 e^{-t rho^2} = 1 / (4 pi^2 t^2).
TEST(HalfLaplacianKernel, OriginValue) {
  for (double t : {0.5, 1.0, 2.0}) {
    const double expected = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * t * t);
    EXPECT_NEAR(half_laplacian_kernel_profile(t, 1e-4), expected, 1e-6 * expected);
  }
}

// The Fourier symbol |xi| e^{-t |xi|^2} vanishes at 0, so the kernel has zero integral.
// Far field at t = 1: -(1 + 12/r^2 + 180/r^4) / (pi^2 r^4).
double far_field_mass(double r) {
  return -4.0 / std::numbers::pi * (1.0 / r + 4.0 / std::pow(r, 3) + 36.0 / std::pow(r, 5));
}

TEST(HalfLaplacianKernel, ZeroIntegral) {
  boost::math::quadrature::gauss_kronrod<double, 31> gk;
  auto f = [](double r) { return 4.0 * std::numbers::pi * r * r * half_laplacian_kernel_profile(1.0, r); };
  const double body = gk.integrate(f, 0.0, 60.0, 12, 1e-13);
  EXPECT_NEAR(body + far_field_mass(60.0), 0.0, 1e-9);
}

TEST(HalfLaplacianKernel, NormsAgainstRadialQuadrature) {
  boost::math::quadrature::gauss_kronrod<double, 31> gk;
  for (double p : {1.0, 4.0 / 3.0, 2.0}) {
    auto f = [p](double r) {
      return 4.0 * std::numbers::pi * r * r * std::pow(std::abs(half_laplacian_kernel_profile(1.0, r)), p);
    };
    const double r = 200.0;
    const double tail = 4.0 * std::numbers::pi * std::pow(std::numbers::pi, -2.0 * p) *
                        (std::pow(r, 3.0 - 4.0 * p) / (4.0 * p - 3.0) + 12.0 * p * std::pow(r, 1.0 - 4.0 * p) / (4.0 * p - 1.0));
    const double oracle = std::pow(gk.integrate(f, 0.0, r, 15, 1e-12) + tail, 1.0 / p);
    EXPECT_NEAR(half_laplacian_kernel_norm(1.0, p), oracle, 2e-6 * oracle) << p;
  }
  EXPECT_NEAR(half_laplacian_kernel_norm(4.0, 1.0) / half_laplacian_kernel_norm(1.0, 1.0), 0.5, 1e-14);
}

// Squared L^2 norm by Plancherel: (2 pi)^{-3} int |xi|^2 e^{-2 |xi|^2} d xi at t = 1.
TEST(HalfLaplacianKernel, L2ByPlancherel) {
  const double pi = std::numbers::pi;
  const double sq = std::pow(2.0 * pi, -3.0) * 4.0 * pi * 3.0 * std::sqrt(pi) / (8.0 * std::pow(2.0, 2.5));
  EXPECT_NEAR(half_laplacian_kernel_norm(1.0, 2.0), std::sqrt(sq), 1e-9 * std::sqrt(sq));
}
