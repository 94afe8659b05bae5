#include "critns/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "critns/error.hpp"
#include "critns/gronwall.hpp"
#include "critns/operators.hpp"

namespace critns::monitors {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::string> kTags = {
    "energy_l2sq",      "dissipation_integral", "energy_defect",  "u_h1sq",        "nu_hm1",
    "u0_source_hm1",    "u0_source_l2sq",       "uL_linf",        "v_h1sq",        "v_h2sq",
    "v_h2sq_integral",  "v_hm1",                "grad_v_l3",      "grad_v_l3_cubed_integral",
    "u0_source_l2sq_integral", "F_functional"};

double safe_ratio(double a, double b) { return b > 0.0 ? a / b : 0.0; }

}  // namespace

EnergyCheck monitor_energy(const std::vector<solver::EnergySample>& samples, double tol_per_unit_time) {
  EnergyCheck c;
  if (samples.empty()) throw InvalidArgument("monitor_energy: no samples");
  c.initial_energy = samples.front().energy;
  c.span = samples.back().time - samples.front().time;
  c.max_defect = -kInf;
  for (const auto& s : samples) {
    c.max_defect = std::max(c.max_defect, s.defect);
    c.max_abs_defect = std::max(c.max_abs_defect, std::abs(s.defect));
  }
  c.max_relative_defect = c.initial_energy > 0.0 ? c.max_abs_defect / c.initial_energy : 0.0;
  c.holds = c.max_defect <= tol_per_unit_time * std::max(c.span, 1.0);
  return c;
}

Pigeonhole pigeonhole_scan(const norms::NormSeries& s, double tstar, double u0_l2) {
  if (!(tstar > 0.0)) throw InvalidArgument("pigeonhole_scan: tstar must be positive");
  s.validate();
  const double lo = 0.5 * tstar;
  const double eps = 1e-9 * tstar;
  if (s.empty() || s.times.front() > lo + eps || s.times.back() < tstar - eps) {
    throw InvalidArgument("pigeonhole_scan: series does not cover [T*/2, T*]");
  }
  Pigeonhole p;
  p.value = kInf;
  double integral = 0.0, prev_t = 0.0, prev_v = 0.0, first_t = 0.0, last_t = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const double t = s.times[i];
    if (t < lo - eps || t > tstar + eps) continue;
    const double v = s.values[i];
    if (v < p.value) {
      p.value = v;
      p.t0star = t;
    }
    if (first) {
      first_t = t;
      first = false;
    } else {
      integral += 0.5 * (t - prev_t) * (v + prev_v);
    }
    prev_t = t;
    prev_v = v;
    last_t = t;
  }
  p.mean = last_t > first_t ? integral / (last_t - first_t) : p.value;
  p.linear_bound = 2.0 * u0_l2 / tstar;
  p.energy_bound = u0_l2 * u0_l2 / tstar;
  const double slack = 1.0 + 1e-12;
  p.holds_linear = p.value <= p.linear_bound * slack;
  p.holds_energy = p.value <= p.energy_bound * slack;
  p.value_below_mean = p.value <= p.mean * slack;
  return p;
}

HalfNorm h_half_at(const SpectralVectorField& u) {
  HalfNorm h;
  const double half = norms::sobolev(u, 0.5);
  h.h_half_squared = half * half;
  h.h1 = norms::sobolev(u, 1.0);
  h.l2 = norms::sobolev(u, 0.0);
  h.holds = h.h_half_squared <= h.h1 * h.l2 * (1.0 + 1e-12);
  return h;
}

// ------------------------------------------------------------ TrajectoryMonitor

TrajectoryMonitor::TrajectoryMonitor(SpectralVectorField u0, double t0) : u0_(std::move(u0)), t0_(t0) {
  for (const auto& tag : kTags) series_.push_back({{}, {}, tag});
}

norms::NormSeries& TrajectoryMonitor::at(const std::string& tag) {
  for (auto& s : series_) {
    if (s.tag == tag) return s;
  }
  throw InvalidArgument("unknown series tag '" + tag + "'");
}

const norms::NormSeries& TrajectoryMonitor::series(const std::string& tag) const {
  for (const auto& s : series_) {
    if (s.tag == tag) return s;
  }
  throw InvalidArgument("unknown series tag '" + tag + "'");
}

std::vector<std::string> TrajectoryMonitor::tags() const { return kTags; }

solver::Observer TrajectoryMonitor::observer() {
  return [this](double t, const SpectralVectorField& u, const solver::EnergySample& e) { observe(t, u, e); };
}

void TrajectoryMonitor::observe(double t, const SpectralVectorField& u, const solver::EnergySample& e) {
  const double tau = t - t0_;
  const SpectralVectorField uL = heat_semigroup(u0_, tau);
  SpectralVectorField u0src = nonlinear_term(uL);
  u0src *= -1.0;
  const SpectralVectorField nu = nonlinear_term(u);
  SpectralVectorField v = u - uL;
  for (std::size_t c = 0; c < 3; ++c) v[c][0] = 0.0;

  const double v_h1 = norms::sobolev(v, 1.0);
  const double v_h2 = norms::sobolev(v, 2.0);
  const double v_hm1 = norms::sobolev(v, -1.0);
  const double u0src_l2 = norms::sobolev(u0src, 0.0);

  // Physical-space pieces: |grad v| and U0 . Delta v.
  const auto grad = gradient_physical(v);
  const PhysicalVectorField src_p = u0src.to_physical();
  const PhysicalVectorField lap_p = laplacian(v).to_physical();
  const Grid& g = u.grid();
  double l3 = 0.0, coupling = 0.0;
  for (std::size_t i = 0; i < g.real_size(); ++i) {
    double s = 0.0;
    for (const auto& c : grad) s += c[i] * c[i];
    l3 += s * std::sqrt(s);
    coupling += std::abs(src_p[0][i] * lap_p[0][i] + src_p[1][i] * lap_p[1][i] + src_p[2][i] * lap_p[2][i]);
  }
  l3 *= g.cell_volume();
  coupling *= g.cell_volume();
  const double grad_v_l3 = std::cbrt(l3);

  auto push = [&](const char* tag, double value) { at(tag).push(t, value); };
  auto push_integral = [&](const char* tag, double integrand, double& prev) {
    auto& s = at(tag);
    const double base = s.empty() ? 0.0 : s.values.back();
    const double inc = s.empty() ? 0.0 : 0.5 * (t - s.times.back()) * (integrand + prev);
    prev = integrand;
    s.push(t, base + inc);
  };

  push("energy_l2sq", e.energy);
  push("dissipation_integral", e.dissipation);
  push("energy_defect", std::abs(e.defect));
  const double u_h1 = norms::sobolev(u, 1.0);
  push("u_h1sq", u_h1 * u_h1);
  push("nu_hm1", norms::sobolev(nu, -1.0));
  push("u0_source_hm1", norms::sobolev(u0src, -1.0));
  push("u0_source_l2sq", u0src_l2 * u0src_l2);
  push("uL_linf", norms::lebesgue(uL, kInf));
  push("v_h1sq", v_h1 * v_h1);
  push("v_h2sq", v_h2 * v_h2);
  push_integral("v_h2sq_integral", v_h2 * v_h2, prev_v_h2sq_);
  push("v_hm1", v_hm1);
  push("grad_v_l3", grad_v_l3);
  push_integral("grad_v_l3_cubed_integral", l3, prev_l3_);
  push_integral("u0_source_l2sq_integral", u0src_l2 * u0src_l2, prev_src_);
  push("F_functional", 2.0 * coupling + l3);
  times_.push_back(t);

  if (v_h1 > 1e-10 * std::max(u_h1, 1e-300) && v_h2 > 0.0 && v_hm1 > 0.0) {
    gn_a_.push_back(grad_v_l3 / (std::sqrt(v_h2) * std::sqrt(v_h1)));
    gn_b_.push_back(grad_v_l3 / (std::pow(v_h2, 2.0 / 3.0) * std::pow(v_h1, 0.25) * std::pow(v_hm1, 1.0 / 12.0)));
  }
}

HeatConvolution TrajectoryMonitor::heat_convolution() const {
  HeatConvolution p;
  p.lhs.tag = "heat_convolution_lhs";
  p.rhs.tag = "heat_convolution_rhs";
  p.ratio.tag = "heat_convolution_ratio";
  const auto& nu = series("nu_hm1");
  const auto& src = series("u0_source_hm1");
  const auto& linf = series("uL_linf");
  if (times_.empty()) return p;
  std::vector<double> rel(times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) rel[i] = times_[i] - times_.front();
  double m = 0.0;
  for (std::size_t i = 0; i < times_.size(); ++i) {
    m = std::max(m, linf.values[i]);
    double rhs = src.values[i];
    if (i > 0) {
      const std::span<const double> nodes(rel.data(), i + 1);
      const std::span<const double> vals(nu.values.data(), i + 1);
      const double c_half = gronwall::singular_convolution(nodes, vals, 0.5, 0.0, rel[i]);
      const double c_78 = gronwall::singular_convolution(nodes, vals, 0.875, 0.0, rel[i]);
      rhs += 2.0 * m * c_half + c_78 * c_78;
    }
    const double r = safe_ratio(nu.values[i], rhs);
    p.lhs.push(times_[i], nu.values[i]);
    p.rhs.push(times_[i], rhs);
    p.ratio.push(times_[i], r);
    p.max_ratio = std::max(p.max_ratio, r);
  }
  return p;
}

Bootstrap TrajectoryMonitor::bootstrap(double window_end) const {
  Bootstrap b;
  norms::NormSeries nu = series("nu_hm1"), src = series("u0_source_hm1");
  // The weight uses time since the datum.
  for (auto& t : nu.times) t -= t0_;
  for (auto& t : src.times) t -= t0_;
  const double horizon = window_end - t0_;
  b.lhs = norms::triple_bar(nu, 0.125, horizon);
  b.rhs = 2.0 * std::sqrt(norms::triple_bar(src, 0.125, horizon));
  b.margin = b.rhs - b.lhs;
  b.holds = b.lhs <= b.rhs;
  b.window = "[" + std::to_string(t0_) + ", " + std::to_string(std::min(window_end, times_.back())) + "]";
  return b;
}

H1Energy TrajectoryMonitor::h1_energy(double c_cal, double besov_0_3_2_u0) const {
  H1Energy h;
  h.c_cal = c_cal;
  h.lhs.tag = "h1_energy_lhs";
  h.rhs.tag = "h1_energy_rhs";
  h.ratio.tag = "h1_energy_ratio";
  const double factor = std::exp(c_cal * besov_0_3_2_u0 * besov_0_3_2_u0);
  const auto& vh1 = series("v_h1sq");
  const auto& vh2i = series("v_h2sq_integral");
  const auto& l3i = series("grad_v_l3_cubed_integral");
  const auto& srci = series("u0_source_l2sq_integral");
  // below this the correction is rounding noise of the split u = e^{t Delta} u0 + v
  const double floor = 1e-24 * std::max(series("u_h1sq").values.front(), 1.0);
  for (std::size_t i = 0; i < times_.size(); ++i) {
    const double lhs = vh1.values[i] + vh2i.values[i];
    const double rhs = factor * l3i.values[i] + 4.0 * factor * srci.values[i];
    const double r = lhs <= floor ? 0.0 : safe_ratio(lhs, rhs);
    h.lhs.push(times_[i], lhs);
    h.rhs.push(times_[i], rhs);
    h.ratio.push(times_[i], r);
    h.max_ratio = std::max(h.max_ratio, r);
  }
  return h;
}

double TrajectoryMonitor::calibrate_h1(double besov_0_3_2_u0) const {
  const H1Energy base = h1_energy(0.0, besov_0_3_2_u0);
  if (base.max_ratio <= 1.0) return 0.0;
  if (!(besov_0_3_2_u0 > 0.0)) return kInf;
  return std::log(base.max_ratio) / (besov_0_3_2_u0 * besov_0_3_2_u0);
}

GnConstants TrajectoryMonitor::gn_constants() const {
  GnConstants g;
  g.samples = static_cast<int>(gn_a_.size());
  for (double v : gn_a_) g.c_two_factor = std::max(g.c_two_factor, v);
  for (double v : gn_b_) g.c_three_factor = std::max(g.c_three_factor, v);
  return g;
}

nlohmann::ordered_json TrajectoryMonitor::record(std::size_t i) const {
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  for (const auto& s : series_) values[s.tag] = s.values.at(i);
  return {{"time", times_.at(i)}, {"convention_version", norms::kConventionVersion}, {"norms", values}};
}

}  // namespace critns::monitors
