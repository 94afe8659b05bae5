#pragma once

#include <array>
#include <vector>

namespace critns {

/// Gaussian heat kernel K(t, x) = (4 pi t)^{-3/2} exp(-|x|^2 / (4t)) on R^3.
std::vector<double> heat_kernel_values(double t, const std::vector<std::array<double, 3>>& points);

/// Integral of K(t, .) over the ball of radius 12 sqrt(t), radial Gauss-Legendre.
/// The neglected tail is below 1e-13.
double heat_kernel_mass(double t);

/// Radial profile of (-Delta)^{1/2} K(t, .) at distance r from the origin.
double half_laplacian_kernel_profile(double t, double r);

/// L^p norm over R^3 of (-Delta)^{1/2} K(t, .), p >= 1.
///
/// Exact scaling gives t^{-2 + 3/(2p)} times the t = 1 value, so only the unit
/// profile is integrated. The far field beyond r = 30 sqrt(t) uses the
/// algebraic asymptote of the profile.
double half_laplacian_kernel_norm(double t, double p);

}  // namespace critns
