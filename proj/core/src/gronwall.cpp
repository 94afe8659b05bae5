#include "critns/gronwall.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace critns::gronwall {

namespace {

struct Moments {
  double m0 = 0.0;  // against (b - tau) / (b - a)
  double m1 = 0.0;  // against (tau - a) / (b - a)
};

boost::math::quadrature::tanh_sinh<double>& tanh_sinh() {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator;
}

// Moments of tau^{-beta} (t - tau)^{-alpha} over [a, c] for the linear basis of panel [a, b], c = min(b, t).
Moments panel_moments(double a, double b, double t, double alpha, double beta) {
  const double c = std::min(b, t);
  const double w = b - a;
  const double len = c - a;
  Moments m;
  if (len <= 0.0) return m;
  const bool right_near = (t - c) < len;
  const bool left_near = beta > 0.0 && a < len;
  if (!right_near && !left_near) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& x = G::abscissa();
    const auto& wt = G::weights();
    const double half = 0.5 * len, mid = a + half;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sgn : {-1.0, 1.0}) {
        if (i == 0 && sgn > 0.0 && x[0] == 0.0) continue;
        const double tau = mid + sgn * half * x[i];
        const double k = std::pow(tau, -beta) * std::pow(t - tau, -alpha) * wt[i] * half;
        m.m0 += k * (b - tau) / w;
        m.m1 += k * (tau - a) / w;
      }
    }
    return m;
  }
  const double midpoint = 0.5 * (a + c);
  auto kernel = [&](double x, double xc) {
    const double dl = x < midpoint ? -xc : x - a;  // tau - a
    const double dr = x > midpoint ? xc : c - x;   // c - tau
    const double tau = a + dl;
    return std::pow(tau, -beta) * std::pow((t - c) + dr, -alpha);
  };
  const double tol = 1e-14;
  m.m0 = tanh_sinh().integrate(
      [&](double x, double xc) {
        const double dr = x > midpoint ? xc : c - x;
        return kernel(x, xc) * ((b - c) + dr) / w;
      },
      a, c, tol);
  m.m1 = tanh_sinh().integrate(
      [&](double x, double xc) {
        const double dl = x < midpoint ? -xc : x - a;
        return kernel(x, xc) * dl / w;
      },
      a, c, tol);
  return m;
}

void require_exponents(double alpha, double beta) {
  if (!(alpha < 1.0) || !(beta < 1.0) || !(alpha >= 0.0) || !(beta >= 0.0)) {
    throw InvalidArgument("singular kernel exponents must satisfy 0 <= alpha < 1 and 0 <= beta < 1");
  }
}

struct Kernel {
  double alpha, beta;
};

struct RegimeKernels {
  Kernel k1, k2;
  // Prefactors multiplying the two convolutions at time t.
  double p1(const GronwallProblem& p, double t) const {
    return p.regime == Regime::small_time ? p.c1 * std::pow(t, 0.125) : p.c1;
  }
  double p2(const GronwallProblem& p, double t) const { return p.effective_c2() * std::pow(t, 0.125); }
};

RegimeKernels kernels_for(Regime r) {
  if (r == Regime::small_time) return {{0.5, 0.125}, {0.875, 0.125}};
  return {{0.5, 0.0}, {0.875, 0.0}};
}

double running_sup(const GronwallProblem& p, const GronwallSolution& sol, double t) {
  double f = evaluate(p, sol, t);
  for (std::size_t i = 0; i < sol.times.size() && sol.times[i] <= t; ++i) f = std::max(f, sol.a_values[i]);
  return f;
}

}  // namespace

std::vector<double> convolution_weights(std::span<const double> nodes, double alpha, double beta, double t) {
  require_exponents(alpha, beta);
  if (nodes.size() < 2 || nodes[0] != 0.0) throw InvalidArgument("convolution_weights: nodes must start at 0");
  if (!(t >= 0.0) || t > nodes.back() * (1.0 + 1e-14)) {
    throw InvalidArgument("convolution_weights: t outside the node range");
  }
  t = std::min(t, nodes.back());
  std::vector<double> w;
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const double a = nodes[j], b = nodes[j + 1];
    if (!(b > a)) throw InvalidArgument("convolution_weights: nodes must be strictly increasing");
    if (a >= t) break;
    const Moments m = panel_moments(a, b, t, alpha, beta);
    if (w.size() < j + 2) w.resize(j + 2, 0.0);
    w[j] += m.m0;
    w[j + 1] += m.m1;
  }
  return w;
}

double singular_convolution(std::span<const double> nodes, std::span<const double> values, double alpha,
                            double beta, double t) {
  if (values.size() != nodes.size()) throw InvalidArgument("singular_convolution: node/value size mismatch");
  const std::vector<double> w = convolution_weights(nodes, alpha, beta, t);
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * values[j];
  return s;
}

double beta_moment(double alpha, double beta) {
  const double nodes[] = {0.0, 1.0};
  const double ones[] = {1.0, 1.0};
  return singular_convolution(nodes, ones, alpha, beta, 1.0);
}

std::string regime_name(Regime r) { return r == Regime::small_time ? "small_time" : "large_time"; }

Regime parse_regime(const std::string& s) {
  if (s == "small_time") return Regime::small_time;
  if (s == "large_time") return Regime::large_time;
  throw InvalidArgument("unknown regime '" + s + "' (expected small_time or large_time)");
}

void GronwallProblem::validate() const {
  if (!(a0 > 0.0) || !std::isfinite(a0)) throw InvalidArgument("gronwall: a0 must be positive");
  if (!(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2)) {
    throw InvalidArgument("gronwall: c1 and c2 must be finite and >= 0");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("gronwall: horizon must be positive");
  if (regime == Regime::small_time && horizon > 1.0) {
    throw InvalidArgument("gronwall: small_time regime requires horizon <= 1");
  }
  if (regime == Regime::large_time && horizon < 1.0) {
    throw InvalidArgument("gronwall: large_time regime requires horizon >= 1");
  }
  if (mesh.intervals < 2 || !(mesh.grading >= 1.0)) {
    throw InvalidArgument("gronwall: mesh needs intervals >= 2 and grading >= 1");
  }
  if (frozen_eps && !(*frozen_eps >= 0.0)) throw InvalidArgument("gronwall: frozen_eps must be >= 0");
  if (max_iterations < 1 || !(tolerance > 0.0)) throw InvalidArgument("gronwall: bad iteration controls");
}

double GronwallProblem::effective_c2() const {
  if (!frozen_eps) return c2;
  const double coef = regime == Regime::small_time ? 20.0 : 16.0;
  return c2 + coef * std::sqrt(*frozen_eps);
}

std::vector<double> GronwallProblem::mesh_nodes() const {
  std::vector<double> t(static_cast<std::size_t>(mesh.intervals) + 1);
  for (int i = 0; i <= mesh.intervals; ++i) {
    t[static_cast<std::size_t>(i)] = horizon * std::pow(static_cast<double>(i) / mesh.intervals, mesh.grading);
  }
  t.back() = horizon;
  return t;
}

GronwallProblem problem_from_json(const nlohmann::json& j) {
  GronwallProblem p;
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw InvalidArgument(std::string("gronwall problem: missing key '") + key + "'");
    return j.at(key);
  };
  p.a0 = need("a0").get<double>();
  p.c1 = need("c1").get<double>();
  p.c2 = need("c2").get<double>();
  p.regime = parse_regime(need("regime").get<std::string>());
  p.horizon = need("horizon").get<double>();
  if (j.contains("intervals")) p.mesh.intervals = j.at("intervals").get<int>();
  if (j.contains("grading")) p.mesh.grading = j.at("grading").get<double>();
  if (j.contains("frozen_eps")) p.frozen_eps = j.at("frozen_eps").get<double>();
  if (j.contains("max_iterations")) p.max_iterations = j.at("max_iterations").get<int>();
  if (j.contains("tolerance")) p.tolerance = j.at("tolerance").get<double>();
  p.validate();
  return p;
}

nlohmann::ordered_json to_json(const GronwallProblem& p) {
  nlohmann::ordered_json j{{"a0", p.a0},
                           {"c1", p.c1},
                           {"c2", p.c2},
                           {"regime", regime_name(p.regime)},
                           {"horizon", p.horizon},
                           {"intervals", p.mesh.intervals},
                           {"grading", p.mesh.grading},
                           {"max_iterations", p.max_iterations},
                           {"tolerance", p.tolerance}};
  if (p.frozen_eps) j["frozen_eps"] = *p.frozen_eps;
  return j;
}

double GronwallSolution::sup() const {
  double s = 0.0;
  for (double v : a_values) s = std::max(s, v);
  return s;
}

void GronwallSolution::require_converged() const {
  if (status == Status::converged) return;
  throw NonConvergence(status == Status::overflow ? "gronwall: iterates overflowed"
                                                  : "gronwall: Picard iteration did not converge");
}

GronwallSolution solve_extremal(const GronwallProblem& problem) {
  problem.validate();
  GronwallSolution sol;
  sol.times = problem.mesh_nodes();
  const std::size_t n = sol.times.size();
  const RegimeKernels rk = kernels_for(problem.regime);

  // Row i of the lower-triangular weight matrix, stored densely by row.
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 1; i < n; ++i) {
    const double t = sol.times[i];
    const std::span<const double> nodes(sol.times.data(), i + 1);
    const double p1 = rk.p1(problem, t), p2 = rk.p2(problem, t);
    std::vector<double> row(i + 1, 0.0);
    if (p1 != 0.0) {
      const auto w = convolution_weights(nodes, rk.k1.alpha, rk.k1.beta, t);
      for (std::size_t j = 0; j < w.size(); ++j) row[j] += p1 * w[j];
    }
    if (p2 != 0.0) {
      const auto w = convolution_weights(nodes, rk.k2.alpha, rk.k2.beta, t);
      for (std::size_t j = 0; j < w.size(); ++j) row[j] += p2 * w[j];
    }
    rows[i] = std::move(row);
  }

  std::vector<double> a(n, problem.a0), next(n);
  sol.status = Status::not_converged;
  for (int it = 1; it <= problem.max_iterations; ++it) {
    next[0] = problem.a0;
    double diff = 0.0;
    bool finite = true;
    for (std::size_t i = 1; i < n; ++i) {
      double s = problem.a0;
      const auto& row = rows[i];
      for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * a[j];
      next[i] = s;
      if (!std::isfinite(s)) finite = false;
      diff = std::max(diff, std::abs(s - a[i]));
    }
    sol.picard_iterations = it;
    sol.last_update = diff / problem.a0;
    if (!finite) {
      sol.status = Status::overflow;
      break;
    }
    a.swap(next);
    if (diff <= problem.tolerance * problem.a0) {
      sol.status = Status::converged;
      break;
    }
  }
  sol.a_values = a;

  const double c1 = problem.c1 + 10.0, c2 = problem.effective_c2() + 10.0;
  sol.bound_log = std::log(problem.a0) + std::pow(20.0, 8) * problem.horizon * std::pow(c1, 8) * std::pow(c2, 8);

  if (sol.status != Status::overflow) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double tm = 0.5 * (sol.times[i] + sol.times[i + 1]);
      const double interp = 0.5 * (sol.a_values[i] + sol.a_values[i + 1]);
      const double rhs = evaluate(problem, sol, tm);
      sol.residual = std::max(sol.residual, std::abs(rhs - interp) / rhs);
    }
  }
  return sol;
}

double evaluate(const GronwallProblem& problem, const GronwallSolution& sol, double t) {
  if (t <= 0.0) return problem.a0;
  const RegimeKernels rk = kernels_for(problem.regime);
  const double p1 = rk.p1(problem, t), p2 = rk.p2(problem, t);
  double v = problem.a0;
  if (p1 != 0.0) v += p1 * singular_convolution(sol.times, sol.a_values, rk.k1.alpha, rk.k1.beta, t);
  if (p2 != 0.0) v += p2 * singular_convolution(sol.times, sol.a_values, rk.k2.alpha, rk.k2.beta, t);
  return v;
}

double premise_value(const GronwallProblem& p, double t) {
  const double c2 = p.effective_c2();
  if (p.regime == Regime::small_time) return 10.0 * (p.c1 * std::sqrt(t) + c2 * std::pow(t, 0.125));
  return 8.0 * (p.c1 * std::sqrt(t) + c2 * std::pow(t, 0.25));
}

double nominal_t0(const GronwallProblem& p) {
  const double c1 = p.c1 + 10.0, c2 = p.effective_c2() + 10.0;
  if (p.regime == Regime::small_time) return 1.0 / (std::pow(20.0, 8) * std::pow(c1, 8) * std::pow(c2, 8));
  return 1.0 / (std::pow(c1, 4) * std::pow(c2, 4));
}

bool BoundReport::all_pass() const {
  auto rows_pass = [](const std::vector<DoublingCheck>& v) {
    return std::all_of(v.begin(), v.end(), [](const DoublingCheck& d) { return d.pass; });
  };
  return bound_holds && rows_pass(nominal_doubling) && rows_pass(surrogate_doubling) && premise_region_holds;
}

BoundReport verify_extremal_bound(const GronwallSolution& sol, const GronwallProblem& problem, double surrogate_t0) {
  problem.validate();
  BoundReport r;
  r.solution_converged = sol.status == Status::converged;
  const double sup = sol.sup();
  r.log_sup = std::log(sup);
  r.log_bound = sol.bound_log;
  r.bound_holds = std::isfinite(r.log_sup) && r.log_sup <= r.log_bound;
  r.nondecreasing = std::is_sorted(sol.a_values.begin(), sol.a_values.end());
  const double slack = 1.0 + 1e-12;

  // Nominal T0: the root powers are evaluated from their closed forms, not from T0 itself.
  r.nominal_t0 = nominal_t0(problem);
  {
    const double c1 = problem.c1 + 10.0, c2 = problem.effective_c2() + 10.0;
    if (problem.regime == Regime::small_time) {
      const double r8 = 1.0 / (20.0 * c1 * c2);  // T0^{1/8}
      r.nominal_premise = 10.0 * (problem.c1 * std::pow(r8, 4) + problem.effective_c2() * r8);
    } else {
      const double r4 = 1.0 / (c1 * c2);  // T0^{1/4}
      r.nominal_premise = 8.0 * (problem.c1 * r4 * r4 + problem.effective_c2() * r4);
    }
    r.nominal_premise_holds = r.nominal_premise * slack <= 0.5;
  }
  if (sol.status != Status::overflow) {
    for (int k = 1;; ++k) {
      const double t = k * r.nominal_t0;
      if (t > problem.horizon * slack) break;
      const double bound = std::ldexp(problem.a0, k);
      const double f = running_sup(problem, sol, std::min(t, problem.horizon));
      r.nominal_doubling.push_back({k, t, f, bound, f <= bound * slack});
      if (bound >= sup) break;
    }
  }

  r.surrogate_t0 = surrogate_t0;
  r.surrogate_premise = premise_value(problem, surrogate_t0);
  if (!(surrogate_t0 > 0.0) || surrogate_t0 > problem.horizon) {
    r.surrogate_status = "surrogate T0 outside (0, horizon], skipped";
  } else if (r.surrogate_premise > 0.5) {
    r.surrogate_status = "premise-not-met, skipped";
  } else if (sol.status == Status::overflow) {
    r.surrogate_status = "solution overflowed, skipped";
  } else {
    r.surrogate_status = "checked";
    double prev = problem.a0;
    for (int k = 0;; ++k) {
      const double t = (k + 1) * surrogate_t0;
      if (t > problem.horizon * slack) break;
      const double f = running_sup(problem, sol, std::min(t, problem.horizon));
      r.surrogate_doubling.push_back({k + 1, t, f, 2.0 * prev, f <= 2.0 * prev * slack});
      prev = f;
    }
  }

  if (sol.status != Status::overflow) {
    double run = 0.0;
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
      const double t = sol.times[i];
      run = std::max(run, sol.a_values[i]);
      if (t > 0.0 && premise_value(problem, t) > 0.5) break;
      r.premise_region_end = t;
      if (run > 2.0 * problem.a0 * slack) r.premise_region_holds = false;
    }
  }
  return r;
}

nlohmann::ordered_json to_json(const BoundReport& r) {
  auto rows = [](const std::vector<DoublingCheck>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& d : v) a.push_back({{"k", d.k}, {"t", d.t}, {"F", d.f}, {"bound", d.bound}, {"pass", d.pass}});
    return a;
  };
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  };
  return {{"solution_converged", r.solution_converged},
          {"log_sup", num(r.log_sup)},
          {"log_bound", num(r.log_bound)},
          {"bound_holds", r.bound_holds},
          {"nondecreasing", r.nondecreasing},
          {"nominal_t0", r.nominal_t0},
          {"nominal_premise", r.nominal_premise},
          {"nominal_premise_holds", r.nominal_premise_holds},
          {"nominal_doubling", rows(r.nominal_doubling)},
          {"surrogate_t0", r.surrogate_t0},
          {"surrogate_premise", r.surrogate_premise},
          {"surrogate_status", r.surrogate_status},
          {"surrogate_doubling", rows(r.surrogate_doubling)},
          {"premise_region_end", r.premise_region_end},
          {"premise_region_holds", r.premise_region_holds},
          {"all_pass", r.all_pass()}};
}

}  // namespace critns::gronwall
