#include "critns/datagen.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "critns/error.hpp"
#include "critns/operators.hpp"

namespace critns::datagen {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

// Index of the integer multiple m of k0 equal to `freq`, or -1.
long lattice_multiple(const Grid& g, double freq) {
  const double m = freq / g.k0();
  const double r = std::round(m);
  if (r < 1.0 || std::abs(m - r) > 1e-9 * std::max(1.0, m)) return -1;
  return static_cast<long>(r);
}

}  // namespace

SpectralVectorField stream_function_data(const SpectralScalarField& phi) {
  const Grid& g = phi.grid();
  SpectralVectorField u(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t, double) {
    u[0][idx] = I * g.kd_full(i2) * phi[idx];
    u[1][idx] = -I * g.kd_half(i1) * phi[idx];
  });
  u.mark_solenoidal();
  return u;
}

SpectralScalarField oscillatory_profile(double eps, const SpectralScalarField& envelope) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("oscillatory_profile: eps must lie in (0, 1)");
  const Grid& g = envelope.grid();
  const long m = lattice_multiple(g, 1.0 / eps);
  if (m < 0) throw IncompatibleScaling("oscillatory_profile: 1/eps is not a lattice frequency");
  const long n = static_cast<long>(g.n());
  const double scale = std::pow(-std::log(eps), 0.2) / eps;
  SpectralScalarField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const std::complex<double> c = envelope[idx];
    if (c == 0.0) return;
    const long m3 = g.signed_mode(i3);
    for (long shift : {m, -m}) {
      const long t3 = m3 + shift;
      if (t3 >= n / 2 || t3 <= -n / 2) {
        throw SpectrumOutOfRange("oscillatory_profile: shifted spectrum leaves the grid");
      }
      const std::size_t j3 = static_cast<std::size_t>((t3 + n) % n);
      out[g.spectral_index(j3, i2, i1)] += 0.5 * scale * c;
    }
  });
  return out;
}

SpectralScalarField default_envelope(const Grid& grid) {
  const double k = grid.k0();
  return SpectralScalarField::from_physical(
      PhysicalField::sample(grid, [k](double x1, double x2, double) { return std::sin(k * x1) * std::sin(k * x2); }));
}

SpectralVectorField taylor_green(const Grid& grid, double a) {
  // Stream function a/k0 sin(k0 x1) sin(k0 x2) cos(k0 x3).
  const double k = grid.k0();
  SpectralScalarField phi(grid);
  const std::size_t n = grid.n();
  for (std::size_t s3 : {std::size_t{1}, n - 1}) {
    for (std::size_t s2 : {std::size_t{1}, n - 1}) {
      // sin x1 sin x2 cos x3 = sum over sign choices of the four modes with k1 = +1.
      const double sign2 = s2 == 1 ? 1.0 : -1.0;
      // sin(x1) -> e^{ix1}/(2i); sin(x2) -> +-e^{+-ix2}/(2i); cos(x3) -> e^{+-ix3}/2
      phi[grid.spectral_index(s3, s2, 1)] = (a / k) * sign2 / ((2.0 * I) * (2.0 * I) * 2.0);
    }
  }
  SpectralVectorField u = stream_function_data(phi);
  return u;
}

SpectralVectorField shear(const Grid& grid, double a) {
  const double k = grid.k0();
  PhysicalVectorField p{PhysicalField::sample(grid, [=](double, double x2, double) { return a * std::sin(k * x2); }),
                        PhysicalField(grid), PhysicalField(grid)};
  SpectralVectorField u = SpectralVectorField::from_physical(p);
  u[0][0] = 0.0;
  u.verify_solenoidal();
  return u;
}

SpectralVectorField random_solenoidal(const Grid& grid, std::uint64_t seed, double slope, int k_max,
                                      double amplitude) {
  const long n = static_cast<long>(grid.n());
  if (k_max < 1 || 2L * k_max >= n) {
    throw InvalidArgument("random_solenoidal: k_max must satisfy 1 <= k_max < n/2");
  }
  if (!std::isfinite(slope) || !std::isfinite(amplitude)) {
    throw InvalidArgument("random_solenoidal: slope and amplitude must be finite");
  }
  // Full-lattice mode counts per integer shell.
  std::map<long, long> shell_count;
  for (long a = -k_max; a <= k_max; ++a)
    for (long b = -k_max; b <= k_max; ++b)
      for (long c = -k_max; c <= k_max; ++c) {
        const double r = std::sqrt(static_cast<double>(a * a + b * b + c * c));
        if (r == 0.0 || r > k_max) continue;
        ++shell_count[std::lround(r)];
      }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  SpectralVectorField u(grid);
  for_each_mode(grid, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const long m1 = static_cast<long>(i1), m2 = grid.signed_mode(i2), m3 = grid.signed_mode(i3);
    const double r = std::sqrt(static_cast<double>(m1 * m1 + m2 * m2 + m3 * m3));
    if (r == 0.0 || r > k_max) return;
    std::size_t partner = idx;
    if (i1 == 0) {
      partner = grid.spectral_index(static_cast<std::size_t>((n - static_cast<long>(i3)) % n),
                                    static_cast<std::size_t>((n - static_cast<long>(i2)) % n), 0);
      if (partner < idx) return;
    }
    const long shell = std::lround(r);
    const double mag = std::sqrt(std::pow(static_cast<double>(shell), slope) / shell_count[shell]);
    // Orthonormal real basis of the plane perpendicular to m.
    const std::array<double, 3> k{static_cast<double>(m1), static_cast<double>(m2), static_cast<double>(m3)};
    std::array<double, 3> ref = std::abs(k[0]) < 0.9 * r ? std::array<double, 3>{1, 0, 0}
                                                          : std::array<double, 3>{0, 1, 0};
    std::array<double, 3> e1{k[1] * ref[2] - k[2] * ref[1], k[2] * ref[0] - k[0] * ref[2],
                             k[0] * ref[1] - k[1] * ref[0]};
    const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (double& v : e1) v /= n1;
    std::array<double, 3> e2{(k[1] * e1[2] - k[2] * e1[1]) / r, (k[2] * e1[0] - k[0] * e1[2]) / r,
                             (k[0] * e1[1] - k[1] * e1[0]) / r};
    const double theta = angle(rng), alpha = angle(rng), beta = angle(rng);
    const std::complex<double> c1 = mag * std::cos(theta) * std::polar(1.0, alpha);
    const std::complex<double> c2 = mag * std::sin(theta) * std::polar(1.0, beta);
    for (std::size_t c = 0; c < 3; ++c) {
      u[c][idx] = c1 * e1[c] + c2 * e2[c];
      if (partner != idx) u[c][partner] = std::conj(u[c][idx]);
    }
  });
  double energy = 0.0;
  for_each_mode(grid, [&](std::size_t idx, std::size_t, std::size_t, std::size_t, double w) {
    for (std::size_t c = 0; c < 3; ++c) energy += w * std::norm(u[c][idx]);
  });
  u *= amplitude / std::sqrt(energy);
  return leray_project(u);
}

Family parse_family(const std::string& name) {
  if (name == "zero") return Family::zero;
  if (name == "shear") return Family::shear;
  if (name == "stream_function") return Family::stream_function;
  if (name == "taylor_green") return Family::taylor_green;
  if (name == "random_solenoidal") return Family::random_solenoidal;
  throw InvalidArgument("unknown data family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::zero: return "zero";
    case Family::shear: return "shear";
    case Family::stream_function: return "stream_function";
    case Family::taylor_green: return "taylor_green";
    case Family::random_solenoidal: return "random_solenoidal";
  }
  return "unknown";
}

SpectralVectorField make_datum(const Grid& grid, const DataFamilySpec& spec) {
  if (!std::isfinite(spec.amplitude)) throw InvalidArgument("datum amplitude must be finite");
  switch (spec.family) {
    case Family::zero: {
      SpectralVectorField u(grid);
      u.mark_solenoidal();
      return u;
    }
    case Family::shear: return shear(grid, spec.amplitude);
    case Family::stream_function: {
      SpectralScalarField phi = oscillatory_profile(spec.eps, default_envelope(grid));
      phi *= spec.amplitude;
      return stream_function_data(phi);
    }
    case Family::taylor_green: return taylor_green(grid, spec.amplitude);
    case Family::random_solenoidal:
      return random_solenoidal(grid, spec.seed, spec.slope, spec.k_max, spec.amplitude);
  }
  throw InvalidArgument("unhandled data family");
}

}  // namespace critns::datagen
