#include "critns/grid.hpp"

#include <bit>
#include <cmath>

#include "critns/error.hpp"

namespace critns {

Grid::Grid(std::size_t n, double period) : n_(n), period_(period) {
  if (n < 8 || !std::has_single_bit(n)) {
    throw InvalidArgument("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InvalidArgument("grid period must be positive and finite");
  }
  auto axes = std::make_shared<Axes>();
  const double k0 = 2.0 * std::numbers::pi / period;
  axes->k_full.resize(n);
  axes->kd_full.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    axes->k_full[i] = k0 * signed_mode(i);
    axes->kd_full[i] = (i == n / 2) ? 0.0 : axes->k_full[i];
  }
  axes->k_half.resize(half());
  axes->kd_half.resize(half());
  for (std::size_t i = 0; i < half(); ++i) {
    axes->k_half[i] = k0 * static_cast<double>(i);
    axes->kd_half[i] = (i == n / 2) ? 0.0 : axes->k_half[i];
  }
  axes_ = std::move(axes);
}

}  // namespace critns
