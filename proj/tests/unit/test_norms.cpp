#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "critns/datagen.hpp"
#include "critns/error.hpp"
#include "critns/norms.hpp"
#include "critns/operators.hpp"
#include "test_support.hpp"

using namespace critns;
namespace ct = critns::test;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// (0, sin(m x1), 0) on the 2 pi box.
SpectralVectorField sine_mode(const Grid& g, int m) {
  SpectralVectorField u(g);
  u[1] = SpectralScalarField::from_physical(
      PhysicalField::sample(g, [m](double x, double, double) { return std::sin(m * x); }));
  return u;
}
}  // namespace

TEST(Lebesgue, PhysicalAgreesWithPlancherel) {
  const Grid g(16);
  const auto u = ct::random_vector(g, 5);
  EXPECT_NEAR(norms::lebesgue(u, 2.0), norms::sobolev(u, 0.0), 1e-13 * norms::sobolev(u, 0.0));
  EXPECT_THROW(norms::lebesgue(u, 0.5), InvalidArgument);
}

TEST(Lebesgue, SineMode) {
  const Grid g(16);
  const auto u = sine_mode(g, 2);
  const double vol = g.volume();
  EXPECT_NEAR(norms::lebesgue(u, kInf), 1.0, 1e-14);
  EXPECT_NEAR(norms::lebesgue(u, 2.0), std::sqrt(vol / 2.0), 1e-12);
  // mean of |sin|^4 is 3/8
  EXPECT_NEAR(norms::lebesgue(u, 4.0), std::pow(vol * 3.0 / 8.0, 0.25), 1e-12);
}

TEST(Sobolev, SingleModeScaling) {
  const Grid g(16);
  const auto u = sine_mode(g, 3);
  const double l2 = std::sqrt(g.volume() / 2.0);
  for (double s : {-1.0, 0.5, 1.0, 2.0}) EXPECT_NEAR(norms::sobolev(u, s), std::pow(3.0, s) * l2, 1e-12) << s;
  auto meanful = u;
  meanful[0][0] = 1.0;
  EXPECT_THROW(norms::sobolev(meanful, -1.0), NegativeOrderOnMeanfulField);
  EXPECT_NEAR(norms::sobolev(meanful, 0.0), std::sqrt(l2 * l2 + g.volume()), 1e-12);
}

TEST(TripleBar, WeightAndHorizon) {
  norms::NormSeries s;
  s.push(0.25, 1.0);
  s.push(1.0, 1.0);
  s.push(4.0, 0.5);
  EXPECT_DOUBLE_EQ(norms::triple_bar(s), 1.0);
  EXPECT_DOUBLE_EQ(norms::triple_bar(s, 0.125, 0.5), std::pow(0.25, 0.125));
  // gamma = 0.2 gives the weight min{1,t}^{0.05}
  EXPECT_DOUBLE_EQ(norms::triple_bar(s, 0.2, 0.5), std::pow(0.25, 0.05));
  EXPECT_THROW(norms::triple_bar(s, 0.25), InvalidArgument);
  EXPECT_THROW(norms::triple_bar(s, 0.0), InvalidArgument);
}

TEST(TimeGrid, GeometricWithEndpoints) {
  const norms::TimeGrid tg{1e-4, 10.0, 16};
  const auto pts = tg.points();
  ASSERT_EQ(pts.size(), 81u);
  EXPECT_DOUBLE_EQ(pts.front(), 1e-4);
  EXPECT_DOUBLE_EQ(pts.back(), 10.0);
  EXPECT_NEAR(pts[16], 1e-3, 1e-15);
}

// sup_t t^{1/2} a e^{-3t} is attained at t = 1/6 for Taylor-Green.
TEST(HeatBesov, TaylorGreenClosedForm) {
  const Grid g(16);
  const auto r = norms::besov_m1_inf_inf(datagen::taylor_green(g, 2.0));
  const double exact = 2.0 * std::sqrt(1.0 / 6.0) * std::exp(-0.5);
  EXPECT_LE(r.value, exact * (1.0 + 1e-12));
  EXPECT_NEAR(r.value, exact, 1e-2 * exact);
  EXPECT_TRUE(r.span_adequate);
  EXPECT_THROW(norms::besov_m1_inf_inf(ct::random_vector(g, 2)), NegativeOrderOnMeanfulField);
}

TEST(HeatBesov, ShortSpanIsReported) {
  const Grid g(16);
  const auto r = norms::besov_m1_inf_inf(datagen::taylor_green(g, 1.0), norms::TimeGrid{1e-3, 1e-2, 16});
  EXPECT_FALSE(r.span_adequate);
  EXPECT_TRUE(r.warning.has_value());
}

TEST(Dyadic, PartitionOfUnity) {
  const Grid g(32);
  const auto d = norms::DyadicDecomposition::covering(g);
  for (double k = 1.0; k <= std::sqrt(3.0) * 16.0; k += 0.173) EXPECT_NEAR(d.partition(k), 1.0, 1e-14) << k;
  EXPECT_DOUBLE_EQ(norms::DyadicDecomposition::phi(1.2), 1.0);
  EXPECT_DOUBLE_EQ(norms::DyadicDecomposition::phi(0.7), 0.0);
  EXPECT_DOUBLE_EQ(norms::DyadicDecomposition::phi(2.1), 0.0);
}

TEST(Dyadic, RejectsUncoveredSpectrum) {
  const Grid g(32);
  const norms::DyadicDecomposition narrow(g, 0, 1);
  EXPECT_THROW(narrow.require_covers(sine_mode(g, 9)), SpectrumOutOfRange);
  EXPECT_NO_THROW(narrow.require_covers(sine_mode(g, 2)));
}

// |k| = 5 lies where phi_2 = 1 and all other blocks vanish, so B^s_{p,q} = 2^{2s} ||u||_{L^p}.
TEST(Besov, FlatBandMode) {
  const Grid g(32);
  const auto d = norms::DyadicDecomposition::covering(g);
  const auto u = sine_mode(g, 5);
  for (double s : {-1.0, 0.0, 0.5}) {
    for (double p : {2.0, 3.0, kInf}) {
      const double expected = std::pow(4.0, s) * norms::lebesgue(u, p);
      EXPECT_NEAR(norms::besov(u, d, s, p, 2.0), expected, 1e-12 * expected) << s << " " << p;
      EXPECT_NEAR(norms::besov(u, d, s, p, kInf), expected, 1e-12 * expected);
    }
  }
  EXPECT_NEAR(norms::besov_critical(u, d, 3.0), norms::lebesgue(u, 3.0), 1e-12);
}

TEST(Besov, HeatCharacterizationComparable) {
  const Grid g(16);
  const auto u = datagen::taylor_green(g, 1.0);
  const auto d = norms::DyadicDecomposition::covering(g);
  const double lp = norms::besov_0_3_2(u, d);
  const double heat = norms::besov_0_3_2_heat(u);
  // For a single-shell datum int ||grad e^{t Delta} u||_{L^3}^2 dt = ||grad u||_{L^3}^2 / (2 |k|^2).
  const double exact = norms::w13_seminorm(u) / std::sqrt(6.0);
  EXPECT_NEAR(heat, exact, 1e-8 * exact);
  EXPECT_GT(lp, 0.1 * heat);
  EXPECT_LT(lp, 10.0 * heat);
}

TEST(W13, SineMode) {
  const Grid g(16);
  // grad u has the single entry cos x; the grid sum of |cos x_j|^3 times the cell volume.
  const double h = 2.0 * std::numbers::pi / 16.0;
  double sum = 0.0;
  for (int j = 0; j < 16; ++j) sum += std::pow(std::abs(std::cos(j * h)), 3);
  const double expected = std::cbrt(sum * h * 4.0 * std::numbers::pi * std::numbers::pi);
  EXPECT_NEAR(norms::w13_seminorm(sine_mode(g, 1)), expected, 1e-12 * expected);
}

TEST(NormRecord, Fields) {
  const auto j = norms::norm_record(0.5, "l2", 2.0);
  EXPECT_EQ(j["time"], 0.5);
  EXPECT_EQ(j["norm_tag"], "l2");
  EXPECT_EQ(j["value"], 2.0);
  EXPECT_EQ(j["convention_version"], norms::kConventionVersion);
}
