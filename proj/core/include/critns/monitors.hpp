#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "critns/field.hpp"
#include "critns/norms.hpp"
#include "critns/solver.hpp"

namespace critns::monitors {

struct EnergyCheck {
  double initial_energy = 0.0;
  /// max over samples of the signed defect ||u||^2 + 2 int ||grad u||^2 - ||u0||^2
  double max_defect = 0.0;
  double max_abs_defect = 0.0;
  double max_relative_defect = 0.0;
  double span = 0.0;
  bool holds = false;
};

/// The energy inequality holds when max_defect <= tol_per_unit_time * span.
EnergyCheck monitor_energy(const std::vector<solver::EnergySample>& samples, double tol_per_unit_time);

struct HeatConvolution {
  norms::NormSeries lhs;    // ||Nu(t)||_{H^-1}
  norms::NormSeries rhs;    // ||U0|| + 2 M int (t-tau)^{-1/2} ||Nu|| + (int (t-tau)^{-7/8} ||Nu||)^2
  norms::NormSeries ratio;  // lhs / rhs, 0 where rhs = 0
  double max_ratio = 0.0;
};

struct Bootstrap {
  double lhs = 0.0;  // sup min{1,t}^{1/8} ||Nu(t)||_{H^-1}
  double rhs = 0.0;  // 2 (sup min{1,t}^{1/8} ||U0(t)||_{H^-1})^{1/2}
  double margin = 0.0;
  bool holds = false;
  std::string window;
};

struct H1Energy {
  double c_cal = 1.0;
  norms::NormSeries lhs;    // ||v(T)||_{H^1}^2 + int_0^T ||v||_{H^2}^2
  norms::NormSeries rhs;
  norms::NormSeries ratio;
  double max_ratio = 0.0;
};

struct GnConstants {
  /// max ||grad v||_{L^3} / (||Delta v||^{1/2} ||grad v||^{1/2})
  double c_two_factor = 0.0;
  /// max ||grad v||_{L^3} / (||v||_{H^2}^{2/3} ||v||_{H^1}^{1/4} ||v||_{H^-1}^{1/12})
  double c_three_factor = 0.0;
  int samples = 0;
};

struct Pigeonhole {
  double t0star = 0.0;
  double value = 0.0;
  double mean = 0.0;
  double linear_bound = 0.0;   // 2 ||u0||_{L^2} / T*
  double energy_bound = 0.0;  // ||u0||_{L^2}^2 / T*
  bool holds_linear = false;
  bool holds_energy = false;
  bool value_below_mean = false;
};

/// Smallest sampled value of a series on [T*/2, T*] against the mean-value bounds.
/// The series must cover the window.
Pigeonhole pigeonhole_scan(const norms::NormSeries& h1_squared, double tstar, double u0_l2);

struct HalfNorm {
  double h_half_squared = 0.0;
  double h1 = 0.0;
  double l2 = 0.0;
  bool holds = false;
};

/// ||u||_{H^{1/2}}^2 <= ||u||_{H^1} ||u||_{L^2} with relative slack 1e-12.
HalfNorm h_half_at(const SpectralVectorField& u);

/// Collects the norm series along one trajectory. Feed it through the solver observer.
class TrajectoryMonitor {
 public:
  TrajectoryMonitor(SpectralVectorField u0, double t0 = 0.0);

  void observe(double t, const SpectralVectorField& u, const solver::EnergySample& e);
  solver::Observer observer();

  const std::vector<double>& times() const { return times_; }
  /// Series by tag; throws InvalidArgument for an unknown tag.
  const norms::NormSeries& series(const std::string& tag) const;
  std::vector<std::string> tags() const;

  HeatConvolution heat_convolution() const;
  Bootstrap bootstrap(double window_end) const;
  H1Energy h1_energy(double c_cal, double besov_0_3_2_u0) const;
  /// Smallest c_cal with h1_energy ratio <= 1 at every sample (0 if the ratio never exceeds 1 at c_cal = 0).
  double calibrate_h1(double besov_0_3_2_u0) const;
  GnConstants gn_constants() const;

  /// {time, convention_version, norms: {tag: value}} for sample i.
  nlohmann::ordered_json record(std::size_t i) const;

 private:
  norms::NormSeries& at(const std::string& tag);

  SpectralVectorField u0_;
  double t0_;
  std::vector<double> times_;
  std::vector<norms::NormSeries> series_;
  std::vector<double> gn_a_, gn_b_;
  double prev_v_h2sq_ = 0.0, prev_l3_ = 0.0, prev_src_ = 0.0;
};

}  // namespace critns::monitors
