#include "critns/heat_kernel.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>

#include "critns/error.hpp"

namespace critns {

namespace {

using std::numbers::pi;
using Gauss16 = boost::math::quadrature::gauss<double, 16>;

void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("heat kernel: t must be positive and finite");
}

// Composite 16-point Gauss-Legendre on [a, b] with equal panels.
template <class F>
double composite(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    sum += Gauss16::integrate(f, lo, lo + h);
  }
  return sum;
}

// Unit-time profile f(r) = (1 / (2 pi^2 r)) int_0^inf rho^2 sin(rho r) exp(-rho^2) d rho.
double unit_profile(double r) {
  constexpr double cutoff = 12.0;
  if (r < 1e-8) {
    // sin(rho r)/r -> rho
    return composite([](double rho) { return rho * rho * rho * std::exp(-rho * rho); }, 0.0, cutoff, 48) /
           (2.0 * pi * pi);
  }
  const int panels = 48 + static_cast<int>(8.0 * r);
  const double v = composite(
      [r](double rho) { return rho * rho * std::sin(rho * r) * std::exp(-rho * rho); }, 0.0, cutoff, panels);
  return v / (2.0 * pi * pi * r);
}

double unit_norm(double p) {
  constexpr double far = 30.0;
  const double body = composite(
      [p](double r) { return 4.0 * pi * r * r * std::pow(std::abs(unit_profile(r)), p); }, 0.0, far, 240);
  // Far field f(r) = -(1 + 12/r^2) / (pi^2 r^4) + O(r^-8), integrated to first order in 1/r^2.
  const double c = 4.0 * pi * std::pow(pi, -2.0 * p);
  const double tail = c * (std::pow(far, 3.0 - 4.0 * p) / (4.0 * p - 3.0) +
                           12.0 * p * std::pow(far, 1.0 - 4.0 * p) / (4.0 * p - 1.0));
  return std::pow(body + tail, 1.0 / p);
}

}  // namespace

std::vector<double> heat_kernel_values(double t, const std::vector<std::array<double, 3>>& points) {
  require_positive_time(t);
  const double norm = std::pow(4.0 * pi * t, -1.5);
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& x : points) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    out.push_back(norm * std::exp(-r2 / (4.0 * t)));
  }
  return out;
}

double heat_kernel_mass(double t) {
  require_positive_time(t);
  const double norm = std::pow(4.0 * pi * t, -1.5);
  const double radius = 12.0 * std::sqrt(t);
  return composite([&](double r) { return 4.0 * pi * r * r * norm * std::exp(-r * r / (4.0 * t)); }, 0.0,
                   radius, 24);
}

double half_laplacian_kernel_profile(double t, double r) {
  require_positive_time(t);
  if (!(r >= 0.0)) throw InvalidArgument("half_laplacian_kernel_profile: r must be >= 0");
  return unit_profile(r / std::sqrt(t)) / (t * t);
}

double half_laplacian_kernel_norm(double t, double p) {
  require_positive_time(t);
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("half_laplacian_kernel_norm: p must be in [1, inf)");
  return std::pow(t, -2.0 + 1.5 / p) * unit_norm(p);
}

}  // namespace critns
