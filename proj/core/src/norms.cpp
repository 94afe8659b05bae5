#include "critns/norms.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

#include "critns/error.hpp"
#include "critns/operators.hpp"

namespace critns::norms {

namespace {

double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

void require_p(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("Lebesgue exponent must satisfy p >= 1");
}

// L^p of a pointwise magnitude given as a sequence of values.
template <class Magnitude>
double lebesgue_of(const Grid& g, std::size_t count, Magnitude&& mag, double p) {
  require_p(p);
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, mag(i));
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += abs_pow(mag(i), p);
  return std::pow(g.cell_volume() * sum, 1.0 / p);
}

double weighted_square_sum(const SpectralScalarField& u, double s) {
  const Grid& g = u.grid();
  double sum = 0.0;
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double w) {
    const double kk = k_squared(g, i1, i2, i3);
    double m;
    if (kk == 0.0) {
      m = s == 0.0 ? 1.0 : 0.0;
    } else {
      m = s == 0.0 ? 1.0 : std::pow(kk, s);
    }
    sum += w * m * std::norm(u[idx]);
  });
  return sum;
}

// Smallest and largest |k| carrying content above a relative floor.
std::pair<double, double> active_band(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  const double floor = 1e-14 * u.max_abs();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const double a = std::max({std::abs(u[0][idx]), std::abs(u[1][idx]), std::abs(u[2][idx])});
    if (a <= floor || a == 0.0) return;
    const double k = std::sqrt(k_squared(g, i1, i2, i3));
    if (k == 0.0) return;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  });
  return {lo, hi};
}

}  // namespace

double lebesgue(const PhysicalField& f, double p) {
  const auto s = f.samples();
  return lebesgue_of(f.grid(), s.size(), [&](std::size_t i) { return std::abs(s[i]); }, p);
}

double lebesgue(const PhysicalVectorField& f, double p) {
  const auto a = f[0].samples(), b = f[1].samples(), c = f[2].samples();
  return lebesgue_of(
      f[0].grid(), a.size(), [&](std::size_t i) { return std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]); },
      p);
}

double lebesgue(const SpectralVectorField& u, double p) { return lebesgue(u.to_physical(), p); }

double sobolev(const SpectralScalarField& u, double s) {
  if (!std::isfinite(s)) throw InvalidArgument("sobolev: non-finite order");
  if (s < 0.0 && std::abs(u.mean()) > 1e-14) {
    throw NegativeOrderOnMeanfulField("sobolev: negative order requires a mean-free field");
  }
  return std::sqrt(u.grid().volume() * weighted_square_sum(u, s));
}

double sobolev(const SpectralVectorField& u, double s) {
  if (!std::isfinite(s)) throw InvalidArgument("sobolev: non-finite order");
  if (s < 0.0 && !u.is_mean_free(1e-14)) {
    throw NegativeOrderOnMeanfulField("sobolev: negative order requires a mean-free field");
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) sum += weighted_square_sum(u[c], s);
  return std::sqrt(u.grid().volume() * sum);
}

// ------------------------------------------------------------------ NormSeries

void NormSeries::push(double t, double v) {
  times.push_back(t);
  values.push_back(v);
}

void NormSeries::validate() const {
  if (times.size() != values.size()) throw InvalidArgument("NormSeries '" + tag + "': length mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw InvalidArgument("NormSeries '" + tag + "': times must be finite and >= 0");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw InvalidArgument("NormSeries '" + tag + "': times must be strictly increasing");
    }
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw InvalidArgument("NormSeries '" + tag + "': values must be finite and >= 0");
    }
  }
}

double triple_bar(const NormSeries& series, double gamma, double horizon) {
  if (!(gamma > 0.0 && gamma < 0.25)) throw InvalidArgument("triple_bar: gamma must lie in (0, 1/4)");
  if (!(horizon > 0.0)) throw InvalidArgument("triple_bar: horizon must be positive");
  series.validate();
  const double exponent = 0.25 - gamma;
  double sup = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t > horizon) break;
    any = true;
    sup = std::max(sup, std::pow(std::min(1.0, t), exponent) * series.values[i]);
  }
  if (!any) throw InvalidArgument("triple_bar: no samples in the time window");
  return sup;
}

// -------------------------------------------------------------- heat Besov

std::vector<double> TimeGrid::points() const {
  if (!(t_min > 0.0) || !(t_max >= t_min) || per_decade < 1) {
    throw InvalidArgument("TimeGrid: need 0 < t_min <= t_max and per_decade >= 1");
  }
  const double decades = std::log10(t_max / t_min);
  const int steps = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    out.push_back(i == steps ? t_max : t_min * std::pow(10.0, decades * i / steps));
  }
  if (t_max == t_min) out.resize(1);
  return out;
}

TimeGrid besov_time_grid(const Grid& grid, int per_decade) {
  const double kmin = grid.k0() / static_cast<double>(grid.n());
  return {kmin * kmin, grid.period() * grid.period(), per_decade};
}

HeatBesovResult besov_m1_inf_inf(const SpectralVectorField& u0, const TimeGrid& tg) {
  if (!u0.is_mean_free(1e-14)) {
    throw NegativeOrderOnMeanfulField("besov_m1_inf_inf: field must be mean-free");
  }
  HeatBesovResult r;
  const TimeGrid need = besov_time_grid(u0.grid(), tg.per_decade);
  if (tg.t_min > need.t_min * (1.0 + 1e-12) || tg.t_max < need.t_max * (1.0 - 1e-12)) {
    r.span_adequate = false;
    r.warning = "time grid [" + std::to_string(tg.t_min) + ", " + std::to_string(tg.t_max) +
                "] does not span the recommended range [" + std::to_string(need.t_min) + ", " +
                std::to_string(need.t_max) + "]";
  }
  for (double t : tg.points()) {
    const double v = std::sqrt(t) * lebesgue(heat_semigroup(u0, t), std::numeric_limits<double>::infinity());
    if (v > r.value) {
      r.value = v;
      r.t_at_sup = t;
    }
  }
  return r;
}

HeatBesovResult besov_m1_inf_inf(const SpectralVectorField& u0) {
  return besov_m1_inf_inf(u0, besov_time_grid(u0.grid()));
}

// ------------------------------------------------------ DyadicDecomposition

DyadicDecomposition::DyadicDecomposition(Grid grid, int j_min, int j_max)
    : grid_(std::move(grid)), j_min_(j_min), j_max_(j_max) {
  if (j_max < j_min) throw InvalidArgument("DyadicDecomposition: j_max < j_min");
}

DyadicDecomposition DyadicDecomposition::covering(const Grid& grid) {
  const double kmin = grid.k0();
  const double kmax = grid.k0() * std::sqrt(3.0) * static_cast<double>(grid.n() / 2);
  const int j_min = static_cast<int>(std::floor(std::log2(kmin)));
  const int j_max = static_cast<int>(std::ceil(std::log2(kmax / 1.5)));
  return DyadicDecomposition(grid, j_min, j_max);
}

double DyadicDecomposition::chi(double r) {
  if (r <= 0.75) return 1.0;
  if (r >= 1.0) return 0.0;
  const double x = 4.0 * r - 3.0;
  return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double DyadicDecomposition::multiplier(int j, double k) const { return phi(std::ldexp(k, -j)); }

double DyadicDecomposition::partition(double k) const {
  double s = 0.0;
  for (int j = j_min_; j <= j_max_; ++j) s += multiplier(j, k);
  return s;
}

SpectralVectorField DyadicDecomposition::block(const SpectralVectorField& u, int j) const {
  require_same_grid(grid_, u.grid(), "DyadicDecomposition::block");
  SpectralVectorField out(grid_);
  for_each_mode(grid_, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const double m = multiplier(j, std::sqrt(k_squared(grid_, i1, i2, i3)));
    if (m == 0.0) return;
    for (std::size_t c = 0; c < 3; ++c) out[c][idx] = m * u[c][idx];
  });
  return out;
}

void DyadicDecomposition::require_covers(const SpectralVectorField& u) const {
  require_same_grid(grid_, u.grid(), "DyadicDecomposition");
  const double floor = 1e-14 * u.max_abs();
  for_each_mode(grid_, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const double a = std::max({std::abs(u[0][idx]), std::abs(u[1][idx]), std::abs(u[2][idx])});
    if (a == 0.0 || a <= floor) return;
    const double k = std::sqrt(k_squared(grid_, i1, i2, i3));
    if (std::abs(partition(k) - 1.0) > 1e-10) {
      throw SpectrumOutOfRange("field has content at |k| = " + std::to_string(k) +
                               " outside the dyadic range [" + std::to_string(j_min_) + ", " +
                               std::to_string(j_max_) + "]");
    }
  });
}

double besov(const SpectralVectorField& u, const DyadicDecomposition& d, double s, double p, double q) {
  if (!(q >= 1.0)) throw InvalidArgument("besov: q must satisfy q >= 1");
  require_p(p);
  d.require_covers(u);
  double acc = 0.0;
  for (int j = d.j_min(); j <= d.j_max(); ++j) {
    const SpectralVectorField b = d.block(u, j);
    if (b.max_abs() == 0.0) continue;
    const double term = std::pow(2.0, j * s) * lebesgue(b, p);
    if (std::isinf(q)) {
      acc = std::max(acc, term);
    } else {
      acc += std::pow(term, q);
    }
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

double besov_0_3_2(const SpectralVectorField& u0, const DyadicDecomposition& d) {
  return besov(u0, d, 0.0, 3.0, 2.0);
}

double besov_m1_inf_2(const SpectralVectorField& u0, const DyadicDecomposition& d) {
  return besov(u0, d, -1.0, std::numeric_limits<double>::infinity(), 2.0);
}

double besov_critical(const SpectralVectorField& u0, const DyadicDecomposition& d, double p) {
  return besov(u0, d, -1.0 + 3.0 / p, p, std::numeric_limits<double>::infinity());
}

double besov_0_3_2_heat(const SpectralVectorField& u0, int panels_per_decade) {
  if (panels_per_decade < 1) throw InvalidArgument("besov_0_3_2_heat: panels_per_decade must be >= 1");
  const auto [kmin, kmax] = active_band(u0);
  if (kmax == 0.0) return 0.0;
  auto g = [&](double t) {
    const double w = w13_seminorm(heat_semigroup(u0, t));
    return w * w;
  };
  const double t_lo = 1e-4 / (kmax * kmax);
  const double t_hi = 50.0 / (kmin * kmin);
  double integral = 0.5 * (g(0.0) + g(t_lo)) * t_lo;
  const double s_lo = std::log(t_lo), s_hi = std::log(t_hi);
  const int panels = static_cast<int>(std::ceil((s_hi - s_lo) / std::log(10.0) * panels_per_decade));
  const double h = (s_hi - s_lo) / panels;
  using Gauss8 = boost::math::quadrature::gauss<double, 8>;
  for (int i = 0; i < panels; ++i) {
    const double a = s_lo + i * h;
    integral += Gauss8::integrate([&](double s) { const double t = std::exp(s); return t * g(t); }, a, a + h);
  }
  return std::sqrt(integral);
}

double w13_seminorm(const SpectralVectorField& u) {
  const auto grad = gradient_physical(u);
  const std::size_t count = u.grid().real_size();
  return lebesgue_of(
      u.grid(), count,
      [&](std::size_t i) {
        double s = 0.0;
        for (const auto& c : grad) s += c[i] * c[i];
        return std::sqrt(s);
      },
      3.0);
}

nlohmann::ordered_json norm_record(double time, const std::string& tag, double value) {
  return {{"time", time}, {"norm_tag", tag}, {"value", value}, {"convention_version", kConventionVersion}};
}

}  // namespace critns::norms
