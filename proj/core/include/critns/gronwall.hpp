#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "critns/error.hpp"

namespace critns::gronwall {

/// Picard iteration did not reach its tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Weights w_j such that int_0^t tau^{-beta} (t - tau)^{-alpha} f(tau) d tau = sum_j w_j f(nodes[j])
/// for f piecewise linear on `nodes` (nodes[0] = 0, increasing, nodes.back() >= t).
///
/// Panel moments use 20-point Gauss-Legendre when both singularities are at least
/// one panel width away and tanh-sinh quadrature otherwise.
std::vector<double> convolution_weights(std::span<const double> nodes, double alpha, double beta, double t);

/// Product-integration value of int_0^t tau^{-beta} (t - tau)^{-alpha} f(tau) d tau.
double singular_convolution(std::span<const double> nodes, std::span<const double> values, double alpha,
                            double beta, double t);

/// int_0^1 lambda^{-beta} (1 - lambda)^{-alpha} d lambda by the same quadrature.
double beta_moment(double alpha, double beta);

enum class Regime { small_time, large_time };

std::string regime_name(Regime r);
Regime parse_regime(const std::string& s);

struct MeshSpec {
  int intervals = 400;
  /// t_i = horizon * (i / intervals)^grading
  double grading = 8.0;
};

struct GronwallProblem {
  double a0 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  Regime regime = Regime::small_time;
  double horizon = 1.0;
  MeshSpec mesh;
  /// Frozen quadratic term: adds 20 sqrt(eps) (small time) or 16 sqrt(eps) (large time) to C2.
  std::optional<double> frozen_eps;
  int max_iterations = 200;
  double tolerance = 1e-10;

  void validate() const;
  double effective_c2() const;
  std::vector<double> mesh_nodes() const;
};

GronwallProblem problem_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const GronwallProblem& p);

enum class Status { converged, not_converged, overflow };

struct GronwallSolution {
  std::vector<double> times;
  std::vector<double> a_values;
  int picard_iterations = 0;
  /// Sup-difference of the last two Picard iterates, relative to a0.
  double last_update = 0.0;
  Status status = Status::converged;
  /// Max relative defect of the integral equation at panel midpoints.
  double residual = 0.0;
  /// log of exp(20^8 T (C1+10)^8 (C2+10)^8) a0.
  double bound_log = 0.0;

  double sup() const;
  /// Throws NonConvergence unless status is converged.
  void require_converged() const;
};

GronwallSolution solve_extremal(const GronwallProblem& problem);

/// Right-hand side of the extremal equation at an arbitrary t in [0, horizon],
/// using the piecewise-linear solution.
double evaluate(const GronwallProblem& problem, const GronwallSolution& sol, double t);

struct DoublingCheck {
  int k = 0;
  double t = 0.0;
  double f = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct BoundReport {
  bool solution_converged = false;
  double log_sup = 0.0;
  double log_bound = 0.0;
  bool bound_holds = false;
  bool nondecreasing = false;

  double nominal_t0 = 0.0;
  double nominal_premise = 0.0;
  bool nominal_premise_holds = false;
  /// F(k T0) <= 2^k a0 for k = 1 .. k*, where 2^{k*} a0 >= sup A.
  std::vector<DoublingCheck> nominal_doubling;

  double surrogate_t0 = 0.0;
  double surrogate_premise = 0.0;
  std::string surrogate_status;
  /// F((k+1) T0') <= 2 F(k T0') for every (k+1) T0' <= horizon.
  std::vector<DoublingCheck> surrogate_doubling;

  /// sup_{[0,t]} A <= 2 a0 wherever the regime's premise holds at t.
  double premise_region_end = 0.0;
  bool premise_region_holds = true;

  bool all_pass() const;
};

/// Premise value 10(C1 t^{1/2} + C2 t^{1/8}) (small time) or 8(C1 t^{1/2} + C2 t^{1/4}) (large time).
double premise_value(const GronwallProblem& p, double t);
/// T0 from the proof: 1/(20^8 (C1+10)^8 (C2+10)^8) or 1/((C1+10)^4 (C2+10)^4).
double nominal_t0(const GronwallProblem& p);

BoundReport verify_extremal_bound(const GronwallSolution& sol, const GronwallProblem& problem,
                               double surrogate_t0 = 0.05);

nlohmann::ordered_json to_json(const BoundReport& r);

}  // namespace critns::gronwall
