#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "critns/field.hpp"

namespace critns::norms {

/// Version tag written into every norm record; bump when a normalization changes.
inline constexpr int kConventionVersion = 1;

/// ||f||_{L^p} by the periodic trapezoid rule; p = infinity gives the sample maximum.
double lebesgue(const PhysicalField& f, double p);
/// Vector version: L^p norm of the pointwise Euclidean magnitude.
double lebesgue(const PhysicalVectorField& f, double p);
double lebesgue(const SpectralVectorField& u, double p);

/// Homogeneous Sobolev norm (l^3 sum_k |k|^{2s} |u_k|^2)^{1/2}.
/// For s = 0 the k = 0 mode is included, so the value equals the L^2 norm.
/// For s < 0 the field must be mean-free.
double sobolev(const SpectralVectorField& u, double s);
double sobolev(const SpectralScalarField& u, double s);

/// A time-dependent nonnegative quantity.
struct NormSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string tag;

  void push(double t, double v);
  /// Throws InvalidArgument if times are not strictly increasing or values are not finite and >= 0.
  void validate() const;
  bool empty() const { return times.empty(); }
};

/// sup over sampled t in [0, T] of min{1, t}^{1/4 - gamma} * value(t).
///
/// gamma = 1/8 gives the weight min{1, t}^{1/8}. The admissible range is (0, 1/4).
double triple_bar(const NormSeries& series, double gamma = 0.125,
                  double horizon = std::numeric_limits<double>::infinity());

/// Geometric time grid with a fixed number of points per decade, endpoints included.
struct TimeGrid {
  double t_min = 1e-4;
  double t_max = 10.0;
  int per_decade = 16;

  std::vector<double> points() const;
};

/// Default span for the heat characterization on `grid`: from (2 pi / (l n))^2 to l^2.
TimeGrid besov_time_grid(const Grid& grid, int per_decade = 16);

struct HeatBesovResult {
  double value = 0.0;
  double t_at_sup = 0.0;
  bool span_adequate = true;
  std::optional<std::string> warning;
};

/// B^{-1}_{inf,inf} by the heat characterization: sup_t t^{1/2} ||e^{t Delta} u0||_{L^inf}.
/// Requires a mean-free field. Inadequate grid span is reported in the result, not thrown.
HeatBesovResult besov_m1_inf_inf(const SpectralVectorField& u0, const TimeGrid& grid);
HeatBesovResult besov_m1_inf_inf(const SpectralVectorField& u0);

/// Littlewood-Paley blocks Delta_j with multiplier phi(|k| / 2^j), j in [j_min, j_max].
///
/// phi(r) = chi(r/2) - chi(r), where chi is 1 on [0, 3/4], 0 on [1, inf), joined by a
/// C^2 quintic. Each phi_j is supported in [3/4 2^j, 2 2^j], equals 1 on [2^j, 3/2 2^j],
/// and the blocks sum to 1 on [2^{j_min}, 3/2 2^{j_max}]. Wavenumbers are physical.
class DyadicDecomposition {
 public:
  DyadicDecomposition(Grid grid, int j_min, int j_max);
  /// Smallest range covering every nonzero wavenumber of the grid.
  static DyadicDecomposition covering(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  double multiplier(int j, double k) const;
  /// Sum of all block multipliers at |k|.
  double partition(double k) const;
  SpectralVectorField block(const SpectralVectorField& u, int j) const;
  /// Throws SpectrumOutOfRange if u has content where the blocks do not sum to 1.
  void require_covers(const SpectralVectorField& u) const;

  static double chi(double r);
  static double phi(double r) { return chi(0.5 * r) - chi(r); }

 private:
  Grid grid_;
  int j_min_;
  int j_max_;
};

/// (sum_j (2^{js} ||Delta_j u||_{L^p})^q)^{1/q}; q = infinity gives the supremum.
double besov(const SpectralVectorField& u, const DyadicDecomposition& d, double s, double p, double q);
/// B^0_{3,2} in Littlewood-Paley form.
double besov_0_3_2(const SpectralVectorField& u0, const DyadicDecomposition& d);
/// B^{-1}_{inf,2} in Littlewood-Paley form.
double besov_m1_inf_2(const SpectralVectorField& u0, const DyadicDecomposition& d);
/// B^{-1+3/p}_{p,inf} in Littlewood-Paley form.
double besov_critical(const SpectralVectorField& u0, const DyadicDecomposition& d, double p);

/// (int_0^inf ||grad e^{t Delta} u0||_{L^3}^2 dt)^{1/2}, Gauss-Legendre panels in log t.
double besov_0_3_2_heat(const SpectralVectorField& u0, int panels_per_decade = 2);

/// ||grad u||_{L^3} with the Frobenius magnitude of the gradient tensor.
double w13_seminorm(const SpectralVectorField& u);

/// {time, norm_tag, value, convention_version}
nlohmann::ordered_json norm_record(double time, const std::string& tag, double value);

}  // namespace critns::norms
