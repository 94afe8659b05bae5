#pragma once

#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

namespace critns {

/// Uniform periodic grid of n^3 points on the box [0, l)^3.
///
/// Physical samples are stored x1-fastest: index = (i3 * n + i2) * n + i1.
/// Spectral coefficients use the real-to-complex half layout with the
/// halved axis along k1: index = (i3 * n + i2) * (n/2 + 1) + i1.
/// Coefficients are normalized so that u(x) = sum_k u_k exp(i k.x), hence
/// the integral of |u|^2 over the box equals l^3 * sum_k |u_k|^2.
class Grid {
 public:
  explicit Grid(std::size_t n, double period = 2.0 * std::numbers::pi);

  std::size_t n() const { return n_; }
  double period() const { return period_; }
  /// Lattice spacing in wavenumber space, 2*pi/l.
  double k0() const { return 2.0 * std::numbers::pi / period_; }
  double spacing() const { return period_ / static_cast<double>(n_); }
  double volume() const { return period_ * period_ * period_; }
  double cell_volume() const { const double h = spacing(); return h * h * h; }

  std::size_t half() const { return n_ / 2 + 1; }
  std::size_t real_size() const { return n_ * n_ * n_; }
  std::size_t spectral_size() const { return n_ * n_ * half(); }

  /// Signed integer mode for a full-length axis index, in [-n/2, n/2).
  int signed_mode(std::size_t i) const {
    return i < n_ / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n_);
  }

  /// Physical wavenumber along a full axis (used for even-order multipliers).
  double k_full(std::size_t i) const { return (*axes_).k_full[i]; }
  /// Physical wavenumber along the halved axis.
  double k_half(std::size_t i) const { return (*axes_).k_half[i]; }
  /// Wavenumber for odd-order derivatives: zero on the Nyquist index.
  double kd_full(std::size_t i) const { return (*axes_).kd_full[i]; }
  double kd_half(std::size_t i) const { return (*axes_).kd_half[i]; }

  bool is_nyquist_full(std::size_t i) const { return i == n_ / 2; }
  bool is_nyquist_half(std::size_t i) const { return i == n_ / 2; }

  std::size_t spectral_index(std::size_t i3, std::size_t i2, std::size_t i1) const {
    return (i3 * n_ + i2) * half() + i1;
  }
  std::size_t real_index(std::size_t i3, std::size_t i2, std::size_t i1) const {
    return (i3 * n_ + i2) * n_ + i1;
  }

  /// Physical coordinate of axis index i.
  double coordinate(std::size_t i) const { return spacing() * static_cast<double>(i); }

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && period_ == other.period_;
  }

 private:
  struct Axes {
    std::vector<double> k_full, kd_full, k_half, kd_half;
  };

  std::size_t n_;
  double period_;
  std::shared_ptr<const Axes> axes_;
};

/// Visit every stored spectral coefficient.
///
/// `fn(index, i1, i2, i3, weight)` where weight is the Hermitian multiplicity
/// of the stored coefficient (1 on the k1 = 0 and k1 = n/2 planes, 2 elsewhere),
/// so that sum(weight * |c|^2) is the full-lattice sum.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const std::size_t n = g.n();
  const std::size_t h = g.half();
  std::size_t idx = 0;
  for (std::size_t i3 = 0; i3 < n; ++i3) {
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      for (std::size_t i1 = 0; i1 < h; ++i1, ++idx) {
        const double weight = (i1 == 0 || i1 == n / 2) ? 1.0 : 2.0;
        fn(idx, i1, i2, i3, weight);
      }
    }
  }
}

/// Squared physical wavenumber |k|^2 of the stored mode.
inline double k_squared(const Grid& g, std::size_t i1, std::size_t i2, std::size_t i3) {
  const double a = g.k_half(i1), b = g.k_full(i2), c = g.k_full(i3);
  return a * a + b * b + c * c;
}

}  // namespace critns
