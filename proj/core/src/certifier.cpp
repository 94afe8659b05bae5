#include "critns/certifier.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "critns/error.hpp"
#include "critns/operators.hpp"
#include "critns/report_json.hpp"

namespace critns::cert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_datum(const SpectralVectorField& u0) {
  if (!u0.is_mean_free(1e-14)) throw InvalidArgument("certifier: u0 must be mean-free");
  if (u0.solenoidal_defect() > 1e-10) throw InvalidArgument("certifier: u0 must be solenoidal");
}

// -nonlinear_term on a field already known to be solenoidal.
SpectralVectorField source_unchecked(const SpectralVectorField& u0, double t) {
  SpectralVectorField uL = heat_semigroup(u0, t);
  uL.mark_solenoidal();
  SpectralVectorField s = nonlinear_term(uL);
  s *= -1.0;
  return s;
}

template <int N>
double gauss_panel(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, N>::integrate(f, a, b);
}

double gauss_by_order(int order, const std::function<double(double)>& f, double a, double b) {
  switch (order) {
    case 4: return gauss_panel<4>(f, a, b);
    case 8: return gauss_panel<8>(f, a, b);
    case 16: return gauss_panel<16>(f, a, b);
    case 20: return gauss_panel<20>(f, a, b);
    default: throw InvalidArgument("quadrature_order must be one of 4, 8, 16, 20");
  }
}

norms::TimeGrid effective_grid(const CertifierConfig& cfg) {
  norms::TimeGrid g = cfg.t_grid;
  g.t_max = std::max(g.t_max, cfg.horizon_tstar);
  return g;
}

}  // namespace

void CertifierConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 0.25)) throw InvalidArgument("certifier.gamma must lie in (0, 1/4)");
  if (!(t_grid.t_min > 0.0) || !(t_grid.t_max > t_grid.t_min) || t_grid.per_decade < 1) {
    throw InvalidArgument("certifier.t_grid must satisfy 0 < t_min < t_max and per_decade >= 1");
  }
  if (!(horizon_tstar > 0.0) || !std::isfinite(horizon_tstar)) {
    throw InvalidArgument("certifier.horizon_tstar must be positive and finite");
  }
  if (!(practical_threshold > 0.0)) throw InvalidArgument("certifier.practical_threshold must be positive");
  if (quadrature_order != 4 && quadrature_order != 8 && quadrature_order != 16 && quadrature_order != 20) {
    throw InvalidArgument("certifier.quadrature_order must be one of 4, 8, 16, 20");
  }
  if (quadrature_panels_per_decade < 1) throw InvalidArgument("certifier.quadrature_panels_per_decade must be >= 1");
}

nlohmann::ordered_json CertifierConfig::to_json() const {
  return {{"gamma", gamma},
          {"t_min", t_grid.t_min},
          {"t_max", t_grid.t_max},
          {"per_decade", t_grid.per_decade},
          {"horizon_tstar", horizon_tstar},
          {"practical_threshold", practical_threshold},
          {"quadrature_order", quadrature_order},
          {"quadrature_panels_per_decade", quadrature_panels_per_decade},
          {"critical_context", critical_context}};
}

SpectralVectorField build_u0_source(const SpectralVectorField& u0, double t) {
  require_datum(u0);
  return source_unchecked(u0, t);
}

SupTerm sup_term(const SpectralVectorField& u0, const CertifierConfig& cfg) {
  cfg.validate();
  require_datum(u0);
  SupTerm out;
  out.series.tag = "u0_source_hm1";
  for (double t : effective_grid(cfg).points()) {
    out.series.push(t, norms::sobolev(source_unchecked(u0, t), -1.0));
  }
  const double exponent = 0.25 - cfg.gamma;
  const auto& ts = out.series.times;
  const auto& vs = out.series.values;
  std::vector<double> weighted(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) weighted[i] = std::pow(std::min(1.0, ts[i]), exponent) * vs[i];
  out.value = norms::triple_bar(out.series, cfg.gamma);
  const auto it = std::max_element(weighted.begin(), weighted.end());
  out.t_at_sup = ts[static_cast<std::size_t>(it - weighted.begin())];
  if (out.value > 0.0) {
    out.left_ratio = weighted.front() / out.value;
    out.right_ratio = weighted.back() / out.value;
    out.left_decay = out.left_ratio < 1.0;
    out.right_decay = out.right_ratio < 1.0;
  }
  return out;
}

double l2l2_term(const SpectralVectorField& u0, const CertifierConfig& cfg) {
  cfg.validate();
  require_datum(u0);
  const double T = cfg.horizon_tstar;
  const std::function<double(double)> f = [&](double t) {
    const double v = norms::sobolev(source_unchecked(u0, t), 0.0);
    return v * v;
  };
  const double t1 = std::min(cfg.t_grid.t_min, T);
  double integral = gauss_by_order(cfg.quadrature_order, f, 0.0, t1);
  if (T > t1) {
    const double decades = std::log10(T / t1);
    const int panels = std::max(1, static_cast<int>(std::ceil(decades * cfg.quadrature_panels_per_decade)));
    double a = t1;
    for (int i = 1; i <= panels; ++i) {
      const double b = i == panels ? T : t1 * std::pow(10.0, decades * i / panels);
      integral += gauss_by_order(cfg.quadrature_order, f, a, b);
      a = b;
    }
  }
  return std::sqrt(integral);
}

CertificateReport condition_lhs(const SpectralVectorField& u0, const CertifierConfig& cfg) {
  CertificateReport r;
  const SupTerm s = sup_term(u0, cfg);
  r.sup_term = s.value;
  r.t_at_sup = s.t_at_sup;
  r.left_decay = s.left_decay;
  r.right_decay = s.right_decay;
  r.l2l2_term = l2l2_term(u0, cfg);
  r.lhs_total = r.sup_term + r.l2l2_term;
  r.tstar_used = cfg.horizon_tstar;
  r.practical_threshold = cfg.practical_threshold;
  r.grid_n = u0.grid().n();
  r.grid_l = u0.grid().period();
  if (!s.left_decay) r.warnings.push_back("sup term attained at the first grid time; extend t_min downward");
  if (!s.right_decay) r.warnings.push_back("sup term attained at the last grid time; extend t_max upward");
  return r;
}

double log_epsilon0(double m0, double tstar) {
  if (std::isnan(m0) || std::isnan(tstar)) throw InvalidArgument("log_epsilon0: NaN input");
  if (!(m0 >= 0.0) || !std::isfinite(m0)) throw InvalidArgument("log_epsilon0: m0 must be finite and >= 0");
  if (!(tstar > 0.0) || !std::isfinite(tstar)) throw InvalidArgument("log_epsilon0: tstar must be positive and finite");
  using Quad = boost::multiprecision::cpp_bin_float_quad;
  const Quad a = pow(Quad(26), 8) * pow(Quad(20), 8);
  const Quad b = pow(Quad(m0) + 10, 8);
  const Quad v = -2 * a * Quad(tstar) * b;
  return v.convert_to<double>();
}

double tstar_from(double u0_l2, double epsilon0) {
  if (!(epsilon0 > 0.0)) throw InvalidArgument("tstar_from: epsilon0 must be positive");
  if (!(u0_l2 >= 0.0)) throw InvalidArgument("tstar_from: ||u0||_{L^2} must be >= 0");
  return 4.0 * u0_l2 / std::sqrt(epsilon0);
}

double log_tstar_from_log_epsilon0(double u0_l2, double log_eps0) {
  if (!(u0_l2 >= 0.0)) throw InvalidArgument("log_tstar_from_log_epsilon0: ||u0||_{L^2} must be >= 0");
  if (std::isnan(log_eps0)) throw InvalidArgument("log_tstar_from_log_epsilon0: NaN input");
  return std::log(4.0 * u0_l2) - 0.5 * log_eps0;
}

CertificateReport certify(const SpectralVectorField& u0, const CertifierConfig& cfg) {
  CertificateReport r = condition_lhs(u0, cfg);
  const double inf = kInf;
  r.m_linf = norms::lebesgue(u0, inf);
  for (double t : effective_grid(cfg).points()) {
    r.m_linf = std::max(r.m_linf, norms::lebesgue(heat_semigroup(u0, t), inf));
  }
  r.m0 = 2.0 * r.m_linf;
  r.log_epsilon0 = log_epsilon0(r.m0, cfg.horizon_tstar);
  r.u0_l2 = norms::sobolev(u0, 0.0);
  r.log_lhs = r.lhs_total > 0.0 ? std::log(r.lhs_total) : -inf;
  r.passes_exact = r.log_lhs <= r.log_epsilon0;
  r.passes_practical = r.lhs_total <= cfg.practical_threshold;
  if (cfg.critical_context) {
    const auto b = norms::besov_m1_inf_inf(u0);
    r.besov_m1_inf_inf = b.value;
    if (b.warning) r.warnings.push_back("besov_m1_inf_inf: " + *b.warning);
    r.besov_0_3_2 = norms::besov_0_3_2(u0, norms::DyadicDecomposition::covering(u0.grid()));
  }
  return r;
}

nlohmann::ordered_json to_json(const CertificateReport& r) {
  nlohmann::ordered_json j;
  j["sup_term"] = r.sup_term;
  j["l2l2_term"] = r.l2l2_term;
  j["lhs_total"] = r.lhs_total;
  j["t_at_sup"] = r.t_at_sup;
  j["sup_left_decay"] = r.left_decay;
  j["sup_right_decay"] = r.right_decay;
  j["m_linf"] = r.m_linf;
  j["m0"] = r.m0;
  j["log_epsilon0"] = r.log_epsilon0;
  j["tstar_used"] = r.tstar_used;
  j["u0_l2"] = r.u0_l2;
  j["log_lhs"] = json_number(r.log_lhs);
  j["passes_exact"] = r.passes_exact;
  j["practical_threshold"] = r.practical_threshold;
  j["passes_practical"] = r.passes_practical;
  nlohmann::ordered_json ctx = nlohmann::ordered_json::object();
  if (r.besov_m1_inf_inf) ctx["besov_m1_inf_inf"] = *r.besov_m1_inf_inf;
  if (r.besov_0_3_2) ctx["besov_0_3_2"] = *r.besov_0_3_2;
  j["critical_norm_context"] = ctx;
  j["warnings"] = r.warnings;
  j["grid"] = {{"n", r.grid_n}, {"l", r.grid_l}};
  return j;
}

CgSmallness cg_nonlinear_smallness(const SpectralVectorField& u0, double c0, const norms::TimeGrid& t_grid) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) throw InvalidArgument("cg_nonlinear_smallness: c0 must be positive");
  require_datum(u0);
  CgSmallness r;
  for (double t : t_grid.points()) {
    SpectralVectorField uL = heat_semigroup(u0, t);
    SpectralVectorField adv = advective_terms(uL, uL);
    for (std::size_t c = 0; c < 3; ++c) adv[c][0] = 0.0;
    const double v = norms::sobolev(leray_project(adv), -1.0);
    r.lhs = std::max(r.lhs, std::pow(std::min(1.0, t), 0.125) * v);
  }
  r.besov_m1_inf_2 = norms::besov_m1_inf_2(u0, norms::DyadicDecomposition::covering(u0.grid()));
  const double b4 = std::pow(r.besov_m1_inf_2, 4);
  r.log_rhs = -std::log(c0) - c0 * b4;
  r.rhs = std::exp(r.log_rhs);
  if (r.lhs == 0.0) {
    r.ratio = 0.0;
    r.holds = true;
  } else {
    r.ratio = std::exp(std::log(r.lhs) - r.log_rhs);
    r.holds = std::log(r.lhs) <= r.log_rhs;
  }
  return r;
}

nlohmann::ordered_json to_json(const CgSmallness& r) {
  return {{"label", r.label},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"log_rhs", r.log_rhs},
          {"ratio", json_number(r.ratio)},
          {"holds", r.holds},
          {"besov_m1_inf_2", r.besov_m1_inf_2}};
}

double bisect_boundary(const std::function<bool(double)>& passes, double lo, double hi, double rel_tol) {
  if (!(lo > 0.0 && hi > lo)) throw InvalidArgument("bisect_boundary: need 0 < lo < hi");
  if (!passes(lo)) throw InvalidArgument("bisect_boundary: predicate fails at lo");
  if (passes(hi)) throw InvalidArgument("bisect_boundary: predicate holds at hi");
  while ((hi - lo) > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace critns::cert
