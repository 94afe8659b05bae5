#include "critns/solver.hpp"

#include <algorithm>
#include <cmath>

#include "critns/log.hpp"
#include "critns/norms.hpp"
#include "critns/operators.hpp"

namespace critns::solver {

namespace {

// exp(-|k|^2 h) per stored mode.
std::vector<double> heat_factors(const Grid& g, double h) {
  std::vector<double> f(g.spectral_size());
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    f[idx] = std::exp(-k_squared(g, i1, i2, i3) * h);
  });
  return f;
}

SpectralVectorField scale_modes(const std::vector<double>& f, const SpectralVectorField& u) {
  SpectralVectorField out(u.grid());
  for (std::size_t c = 0; c < 3; ++c) {
    auto src = u[c].coeffs();
    auto dst = out[c].coeffs();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = f[i] * src[i];
  }
  return out;
}

bool all_finite(const SpectralVectorField& u) {
  for (std::size_t c = 0; c < 3; ++c) {
    for (const auto& z : u[c].coeffs()) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

// Integrating-factor stepper with cached exponentials for a fixed dt.
class IfStepper {
 public:
  IfStepper(const Grid& g, double dt, Scheme scheme)
      : dt_(dt), scheme_(scheme), full_(heat_factors(g, dt)), half_(heat_factors(g, 0.5 * dt)) {}

  // k1 = P Nu(u) is supplied by the caller so it can be shared with diagnostics.
  SpectralVectorField step(const SpectralVectorField& u, const SpectralVectorField& k1) const {
    const double dt = dt_;
    SpectralVectorField out(u.grid());
    if (scheme_ == Scheme::imex_if_rk2) {
      SpectralVectorField stage = u;
      stage.axpy(dt, k1);
      const SpectralVectorField k2 = projected_nonlinear(scale_modes(full_, stage));
      SpectralVectorField acc = u;
      acc.axpy(0.5 * dt, k1);
      out = scale_modes(full_, acc);
      out.axpy(0.5 * dt, k2);
    } else {
      SpectralVectorField s = u;
      s.axpy(0.5 * dt, k1);
      const SpectralVectorField k2 = projected_nonlinear(scale_modes(half_, s));
      SpectralVectorField eu_half = scale_modes(half_, u);
      s = eu_half;
      s.axpy(0.5 * dt, k2);
      const SpectralVectorField k3 = projected_nonlinear(s);
      s = scale_modes(full_, u);
      s.axpy(dt, scale_modes(half_, k3));
      const SpectralVectorField k4 = projected_nonlinear(s);
      // E(u + dt/6 k1) + dt/3 E_half(k2 + k3) + dt/6 k4
      SpectralVectorField a = u;
      a.axpy(dt / 6.0, k1);
      out = scale_modes(full_, a);
      SpectralVectorField mid = k2;
      mid += k3;
      out.axpy(dt / 3.0, scale_modes(half_, mid));
      out.axpy(dt / 6.0, k4);
    }
    out = leray_project(out);
    return out;
  }

 private:
  double dt_;
  Scheme scheme_;
  std::vector<double> full_, half_;
};

// ||grad u||^2 and its time derivative 2 l^3 sum |k|^2 Re(conj(u) . (-|k|^2 u + k1)).
std::pair<double, double> dissipation_and_rate(const SpectralVectorField& u, const SpectralVectorField& k1) {
  const Grid& g = u.grid();
  double d = 0.0, dp = 0.0;
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double w) {
    const double kk = k_squared(g, i1, i2, i3);
    if (kk == 0.0) return;
    for (std::size_t c = 0; c < 3; ++c) {
      const auto z = u[c][idx];
      d += w * kk * std::norm(z);
      dp += w * kk * std::real(std::conj(z) * (-kk * z + k1[c][idx]));
    }
  });
  return {g.volume() * d, 2.0 * g.volume() * dp};
}

double energy_of(const SpectralVectorField& u) {
  const double e = norms::sobolev(u, 0.0);
  return e * e;
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::mild_picard: return "mild_picard";
    case Scheme::imex_if_rk2: return "imex_if_rk2";
    case Scheme::imex_if_rk4: return "imex_if_rk4";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "mild_picard") return Scheme::mild_picard;
  if (s == "imex_if_rk2") return Scheme::imex_if_rk2;
  if (s == "imex_if_rk4") return Scheme::imex_if_rk4;
  throw InvalidArgument("unknown scheme '" + s + "'");
}

SpectralVectorField projected_nonlinear(const SpectralVectorField& u) {
  return leray_project(nonlinear_term(u));
}

SpectralVectorField step_imex(const SpectralVectorField& u, double dt, Scheme scheme) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("step_imex: dt must be positive");
  if (scheme == Scheme::mild_picard) throw InvalidArgument("step_imex: mild_picard is not a stepping scheme");
  const IfStepper stepper(u.grid(), dt, scheme);
  SpectralVectorField out = stepper.step(u, projected_nonlinear(u));
  if (!all_finite(out)) throw BlowupOrInstability("step_imex: non-finite values after step", u, 0.0);
  return out;
}

double cfl_number(const SpectralVectorField& u, double dt) {
  const double umax = norms::lebesgue(u, std::numeric_limits<double>::infinity());
  const double kmax = u.grid().k0() * static_cast<double>(u.grid().n()) / 3.0;
  return dt * umax * kmax;
}

double tail_energy_fraction(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  const double n = static_cast<double>(g.n());
  const double r_tail = (2.0 / 3.0) * (n / 3.0);
  double total = 0.0, tail = 0.0;
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double w) {
    double e = 0.0;
    for (std::size_t c = 0; c < 3; ++c) e += w * std::norm(u[c][idx]);
    total += e;
    const double m1 = static_cast<double>(i1), m2 = g.signed_mode(i2), m3 = g.signed_mode(i3);
    if (m1 * m1 + m2 * m2 + m3 * m3 > r_tail * r_tail) tail += e;
  });
  return total > 0.0 ? tail / total : 0.0;
}

void RunConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("simulation.dt must be positive");
  if (!(t_end > t_start)) throw InvalidArgument("simulation.t_end must exceed t_start");
  if (cadence < 1) throw InvalidArgument("simulation.cadence must be >= 1");
}

int RunConfig::steps() const {
  const double s = (t_end - t_start) / dt;
  const double r = std::round(s);
  return static_cast<int>(std::abs(s - r) < 1e-9 * std::max(1.0, s) ? r : std::ceil(s));
}

RunResult run_imex(const SpectralVectorField& u0, const RunConfig& cfg, const Observer& observer) {
  cfg.validate();
  if (cfg.scheme == Scheme::mild_picard) throw InvalidArgument("run_imex: use picard_mild for the mild scheme");
  const int steps = cfg.steps();
  const double dt = (cfg.t_end - cfg.t_start) / steps;
  const double cfl = cfl_number(u0, dt);
  const double cfl_limit = cfg.scheme == Scheme::imex_if_rk4 ? 2.5 : 1.0;
  if (cfl > cfl_limit) warn("run_imex: CFL number " + std::to_string(cfl) + " exceeds " + std::to_string(cfl_limit));

  const IfStepper stepper(u0.grid(), dt, cfg.scheme);
  RunResult res{u0, cfg.t_start, 0, "complete", {}, u0.solenoidal_defect()};
  SpectralVectorField u = u0;
  SpectralVectorField k1 = projected_nonlinear(u);
  auto [d, dp] = dissipation_and_rate(u, k1);
  const double e0 = energy_of(u);
  double integral = 0.0;

  auto observe = [&](double t) {
    EnergySample s{t, energy_of(u), integral, 0.0};
    s.defect = s.energy + 2.0 * s.dissipation - e0;
    res.energy.push_back(s);
    res.max_solenoidal_defect = std::max(res.max_solenoidal_defect, u.solenoidal_defect());
    if (observer) observer(t, u, s);
  };
  observe(cfg.t_start);

  for (int step = 1; step <= steps; ++step) {
    const double t = cfg.t_start + step * dt;
    SpectralVectorField next = stepper.step(u, k1);
    if (!all_finite(next)) {
      res.status = "blowup: non-finite values";
      break;
    }
    SpectralVectorField k1n = projected_nonlinear(next);
    const auto [dn, dpn] = dissipation_and_rate(next, k1n);
    integral += 0.5 * dt * (d + dn) + dt * dt / 12.0 * (dp - dpn);
    u = std::move(next);
    k1 = std::move(k1n);
    d = dn;
    dp = dpn;
    res.final_time = t;
    res.steps_taken = step;
    if (step % cfg.cadence == 0 || step == steps) {
      observe(t);
      if (tail_energy_fraction(u) > cfg.tail_limit) {
        res.status = "blowup: spectral tail";
        break;
      }
    }
  }
  res.final_state = u;
  return res;
}

PicardResult picard_mild(const SpectralVectorField& u0, double t_end, int depth, double dt, int keep_every) {
  if (!(t_end > 0.0) || !(dt > 0.0)) throw InvalidArgument("picard_mild: t_end and dt must be positive");
  if (depth < 0) throw InvalidArgument("picard_mild: depth must be >= 0");
  if (keep_every < 1) throw InvalidArgument("picard_mild: keep_every must be >= 1");
  const int m_count = std::max(1, static_cast<int>(std::llround(t_end / dt)));
  const double h = t_end / m_count;
  const std::vector<double> step_factor = heat_factors(u0.grid(), h);

  PicardResult res;
  for (int m = 0; m <= m_count; ++m) {
    if (m % keep_every == 0 || m == m_count) res.times.push_back(m * h);
  }
  auto keep = [&](const std::vector<SpectralVectorField>& all) {
    std::vector<SpectralVectorField> kept;
    for (int m = 0; m <= m_count; ++m) {
      if (m % keep_every == 0 || m == m_count) kept.push_back(all[static_cast<std::size_t>(m)]);
    }
    return kept;
  };

  std::vector<SpectralVectorField> linear;
  linear.reserve(static_cast<std::size_t>(m_count) + 1);
  linear.push_back(u0);
  for (int m = 1; m <= m_count; ++m) {
    SpectralVectorField next = scale_modes(step_factor, linear.back());
    next.mark_solenoidal();
    linear.push_back(std::move(next));
  }
  res.iterates.push_back(keep(linear));

  std::vector<SpectralVectorField> current = linear;
  for (int it = 1; it <= depth; ++it) {
    std::vector<SpectralVectorField> next;
    next.reserve(current.size());
    SpectralVectorField duhamel(u0.grid());
    SpectralVectorField g_prev = projected_nonlinear(current[0]);
    next.push_back(linear[0]);
    double dist = 0.0;
    for (int m = 1; m <= m_count; ++m) {
      const SpectralVectorField g = projected_nonlinear(current[static_cast<std::size_t>(m)]);
      SpectralVectorField d = scale_modes(step_factor, duhamel);
      SpectralVectorField trap = scale_modes(step_factor, g_prev);
      trap += g;
      d.axpy(0.5 * h, trap);
      duhamel = std::move(d);
      g_prev = g;
      SpectralVectorField u = linear[static_cast<std::size_t>(m)];
      u += duhamel;
      u = leray_project(u);
      dist = std::max(dist, norms::sobolev(u - current[static_cast<std::size_t>(m)], 0.0));
      next.push_back(std::move(u));
    }
    res.successive_distance.push_back(dist);
    if (!std::isfinite(dist)) {
      res.diverged = true;
      break;
    }
    if (res.successive_distance.size() >= 2 && dist > res.successive_distance[res.successive_distance.size() - 2]) {
      res.diverged = true;
    }
    current = std::move(next);
    res.iterates.push_back(keep(current));
  }
  return res;
}

std::vector<SpectralVectorField> split_linear(const std::vector<double>& times,
                                              const std::vector<SpectralVectorField>& states,
                                              const SpectralVectorField& u0, double t0) {
  if (times.size() != states.size()) throw InvalidArgument("split_linear: times and states differ in length");
  std::vector<SpectralVectorField> v;
  v.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    require_same_grid(states[i].grid(), u0.grid(), "split_linear");
    if (times[i] < t0) throw InvalidArgument("split_linear: state time precedes the datum time");
    v.push_back(states[i] - heat_semigroup(u0, times[i] - t0));
  }
  return v;
}

}  // namespace critns::solver
