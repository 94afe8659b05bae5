#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "critns/field.hpp"
#include "critns/norms.hpp"

namespace critns::cert {

struct CertifierConfig {
  double gamma = 0.125;
  /// Sup-term grid; t_max is raised to max(t_max, horizon_tstar) at evaluation time.
  norms::TimeGrid t_grid{1e-4, 10.0, 16};
  double horizon_tstar = 1.0;
  double practical_threshold = 1e-2;
  /// Gauss-Legendre points per panel for the L^2_t L^2_x integral: 4, 8, 16 or 20.
  int quadrature_order = 8;
  int quadrature_panels_per_decade = 3;
  /// Evaluate B^{-1}_{inf,inf} and B^0_{3,2} for the report.
  bool critical_context = true;

  /// Throws InvalidArgument on an invalid setting.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

/// U0(t) = div(u_L (x) u_L) with u_L = e^{t Delta} u0, i.e. -nonlinear_term(u_L).
/// Requires a mean-free, solenoidal u0.
SpectralVectorField build_u0_source(const SpectralVectorField& u0, double t);

struct SupTerm {
  double value = 0.0;
  double t_at_sup = 0.0;
  /// Weighted values at the first and last grid time, relative to the sup.
  double left_ratio = 0.0;
  double right_ratio = 0.0;
  bool left_decay = true;
  bool right_decay = true;
  norms::NormSeries series;  // unweighted ||U0(t)||_{H^-1}
};

struct CertificateReport {
  double sup_term = 0.0;
  double l2l2_term = 0.0;
  double lhs_total = 0.0;
  double m_linf = 0.0;
  double m0 = 0.0;
  double log_epsilon0 = 0.0;
  double tstar_used = 0.0;
  double u0_l2 = 0.0;
  /// log(lhs_total) <= log_epsilon0; -infinity for a zero left-hand side.
  double log_lhs = 0.0;
  bool passes_exact = false;
  bool passes_practical = false;
  double practical_threshold = 0.0;
  double t_at_sup = 0.0;
  bool left_decay = true;
  bool right_decay = true;
  std::optional<double> besov_m1_inf_inf;
  std::optional<double> besov_0_3_2;
  std::vector<std::string> warnings;
  std::size_t grid_n = 0;
  double grid_l = 0.0;
};

SupTerm sup_term(const SpectralVectorField& u0, const CertifierConfig& cfg);
/// (int_0^{T*} ||U0(t)||_{L^2}^2 dt)^{1/2}.
double l2l2_term(const SpectralVectorField& u0, const CertifierConfig& cfg);

/// Partial report: the two terms of the condition and their sum.
CertificateReport condition_lhs(const SpectralVectorField& u0, const CertifierConfig& cfg);

/// log eps0 = -2 * 26^8 * 20^8 * T* * (m0 + 10)^8, evaluated in 113-bit precision.
double log_epsilon0(double m0, double tstar);

/// T* = 4 ||u0||_{L^2} / sqrt(eps0).
double tstar_from(double u0_l2, double epsilon0);
/// log T* for an epsilon0 given by its logarithm.
double log_tstar_from_log_epsilon0(double u0_l2, double log_epsilon0);

CertificateReport certify(const SpectralVectorField& u0, const CertifierConfig& cfg);

nlohmann::ordered_json to_json(const CertificateReport& r);

/// Nonlinear smallness check with the E-norm replaced by the documented surrogate
/// sup_t min{1,t}^{1/8} ||P(u_L . grad u_L)||_{H^-1}.
struct CgSmallness {
  double lhs = 0.0;
  double rhs = 0.0;
  double log_rhs = 0.0;
  double ratio = 0.0;
  bool holds = false;
  double besov_m1_inf_2 = 0.0;
  std::string label = "surrogate-E";
};

CgSmallness cg_nonlinear_smallness(const SpectralVectorField& u0, double c0, const norms::TimeGrid& t_grid);
nlohmann::ordered_json to_json(const CgSmallness& r);

/// Boundary of a predicate that holds at `lo` and fails at `hi`, by bisection to relative width rel_tol.
double bisect_boundary(const std::function<bool(double)>& passes, double lo, double hi, double rel_tol = 1e-6);

}  // namespace critns::cert
