#include "critns/operators.hpp"

#include <cmath>
#include <complex>

#include "critns/error.hpp"
#include "critns/log.hpp"

namespace critns {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

// Derivative wavenumber vector of a stored mode.
struct KVec {
  double k1, k2, k3;
};

KVec kd(const Grid& g, std::size_t i1, std::size_t i2, std::size_t i3) {
  return {g.kd_half(i1), g.kd_full(i2), g.kd_full(i3)};
}

}  // namespace

SpectralVectorField leray_project(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  SpectralVectorField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const KVec k = kd(g, i1, i2, i3);
    const double kk = k.k1 * k.k1 + k.k2 * k.k2 + k.k3 * k.k3;
    const std::complex<double> a = u[0][idx], b = u[1][idx], c = u[2][idx];
    if (kk == 0.0) {
      out[0][idx] = a;
      out[1][idx] = b;
      out[2][idx] = c;
      return;
    }
    const std::complex<double> proj = (k.k1 * a + k.k2 * b + k.k3 * c) / kk;
    out[0][idx] = a - k.k1 * proj;
    out[1][idx] = b - k.k2 * proj;
    out[2][idx] = c - k.k3 * proj;
  });
  out.mark_solenoidal();
  return out;
}

SpectralScalarField heat_semigroup(const SpectralScalarField& u, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("heat_semigroup: t must be finite and >= 0");
  const Grid& g = u.grid();
  SpectralScalarField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    out[idx] = u[idx] * std::exp(-k_squared(g, i1, i2, i3) * t);
  });
  return out;
}

SpectralVectorField heat_semigroup(const SpectralVectorField& u, double t) {
  SpectralVectorField out(heat_semigroup(u[0], t), heat_semigroup(u[1], t), heat_semigroup(u[2], t));
  if (u.solenoidal_checked()) out.mark_solenoidal();
  return out;
}

SpectralVectorField fractional_laplacian(const SpectralVectorField& u, double s) {
  if (!std::isfinite(s)) throw InvalidArgument("fractional_laplacian: non-finite order");
  if (s < 0.0 && !u.is_mean_free(1e-14)) {
    throw NegativeOrderOnMeanfulField("fractional_laplacian: negative order requires a mean-free field");
  }
  const Grid& g = u.grid();
  SpectralVectorField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const double kk = k_squared(g, i1, i2, i3);
    double m = 0.0;
    if (kk > 0.0) {
      m = std::pow(kk, s);
    } else if (s == 0.0) {
      m = 1.0;
    }
    for (std::size_t c = 0; c < 3; ++c) out[c][idx] = m * u[c][idx];
  });
  if (u.solenoidal_checked()) out.mark_solenoidal();
  return out;
}

bool in_dealiased_band(const Grid& g, std::size_t i1, std::size_t i2, std::size_t i3) {
  const long m1 = static_cast<long>(i1);
  const long m2 = g.signed_mode(i2);
  const long m3 = g.signed_mode(i3);
  const long n = static_cast<long>(g.n());
  // |m| <= n/3  <=>  9 |m|^2 <= n^2 ; the bound is never attained for power-of-two n.
  return 9 * (m1 * m1 + m2 * m2 + m3 * m3) <= n * n;
}

SpectralScalarField dealias(const SpectralScalarField& u) {
  const Grid& g = u.grid();
  SpectralScalarField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    if (in_dealiased_band(g, i1, i2, i3)) out[idx] = u[idx];
  });
  return out;
}

SpectralVectorField dealias(const SpectralVectorField& u) {
  SpectralVectorField out(dealias(u[0]), dealias(u[1]), dealias(u[2]));
  if (u.solenoidal_checked()) out.mark_solenoidal();
  return out;
}

SymmetricTensorField outer_product(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  const PhysicalVectorField p = dealias(u).to_physical();
  SymmetricTensorField t(g);
  PhysicalField prod(g);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      const auto a = p[i].samples();
      const auto b = p[j].samples();
      auto out = prod.samples();
      for (std::size_t q = 0; q < out.size(); ++q) out[q] = a[q] * b[q];
      forward_fft(g, prod.samples(), t(i, j).coeffs());
    }
  }
  return t;
}

SpectralVectorField tensor_divergence(const SymmetricTensorField& t) {
  const Grid& g = t.grid();
  SpectralVectorField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const KVec k = kd(g, i1, i2, i3);
    for (std::size_t i = 0; i < 3; ++i) {
      out[i][idx] = I * (k.k1 * t(i, 0)[idx] + k.k2 * t(i, 1)[idx] + k.k3 * t(i, 2)[idx]);
    }
  });
  return out;
}

SpectralVectorField nonlinear_term(const SpectralVectorField& u) {
  if (!u.solenoidal_checked()) {
    const double defect = u.solenoidal_defect();
    if (defect > 1e-10) {
      warn("nonlinear_term: input is not solenoidal (defect " + std::to_string(defect) + ")");
    }
  }
  SpectralVectorField div = tensor_divergence(outer_product(u));
  div *= -1.0;
  return dealias(div);
}

SpectralVectorField advective_terms(const SpectralVectorField& a, const SpectralVectorField& b) {
  require_same_grid(a.grid(), b.grid(), "advective_terms");
  const Grid& g = a.grid();
  const PhysicalVectorField pa = dealias(a).to_physical();
  const std::array<PhysicalField, 9> gb = gradient_physical(dealias(b));
  SpectralVectorField out(g);
  PhysicalField acc(g);
  for (std::size_t i = 0; i < 3; ++i) {
    auto s = acc.samples();
    const auto a0 = pa[0].samples(), a1 = pa[1].samples(), a2 = pa[2].samples();
    const auto d0 = gb[3 * i + 0].samples(), d1 = gb[3 * i + 1].samples(), d2 = gb[3 * i + 2].samples();
    for (std::size_t q = 0; q < s.size(); ++q) s[q] = a0[q] * d0[q] + a1[q] * d1[q] + a2[q] * d2[q];
    forward_fft(g, acc.samples(), out[i].coeffs());
  }
  return dealias(out);
}

SpectralVectorField gradient(const SpectralScalarField& f) {
  const Grid& g = f.grid();
  SpectralVectorField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const KVec k = kd(g, i1, i2, i3);
    out[0][idx] = I * k.k1 * f[idx];
    out[1][idx] = I * k.k2 * f[idx];
    out[2][idx] = I * k.k3 * f[idx];
  });
  return out;
}

SpectralScalarField divergence(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  SpectralScalarField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const KVec k = kd(g, i1, i2, i3);
    out[idx] = I * (k.k1 * u[0][idx] + k.k2 * u[1][idx] + k.k3 * u[2][idx]);
  });
  return out;
}

SpectralVectorField laplacian(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  SpectralVectorField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const double kk = k_squared(g, i1, i2, i3);
    for (std::size_t c = 0; c < 3; ++c) out[c][idx] = -kk * u[c][idx];
  });
  if (u.solenoidal_checked()) out.mark_solenoidal();
  return out;
}

std::array<PhysicalField, 9> gradient_physical(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  std::array<PhysicalField, 9> out{PhysicalField(g), PhysicalField(g), PhysicalField(g),
                                   PhysicalField(g), PhysicalField(g), PhysicalField(g),
                                   PhysicalField(g), PhysicalField(g), PhysicalField(g)};
  SpectralScalarField d(g);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
        const KVec k = kd(g, i1, i2, i3);
        const double kj = j == 0 ? k.k1 : (j == 1 ? k.k2 : k.k3);
        d[idx] = I * kj * u[i][idx];
      });
      inverse_fft(g, d.coeffs(), out[3 * i + j].samples());
    }
  }
  return out;
}

SpectralVectorField rescale_field(const SpectralVectorField& u0, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw IncompatibleScaling("rescale_field: lambda must be positive and finite");
  }
  const Grid& g = u0.grid();
  const Grid scaled(g.n(), g.period() / lambda);
  SpectralVectorField out(scaled);
  for (std::size_t c = 0; c < 3; ++c) {
    auto src = u0[c].coeffs();
    auto dst = out[c].coeffs();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lambda * src[i];
  }
  if (u0.solenoidal_checked()) out.mark_solenoidal();
  return out;
}

SpectralVectorField rescale_in_box(const SpectralVectorField& u0, double lambda) {
  const double r = std::round(lambda);
  if (!(lambda >= 1.0) || std::abs(lambda - r) > 1e-12 * lambda) {
    throw IncompatibleScaling("rescale_in_box: lambda must be an integer >= 1 to preserve the lattice");
  }
  const long q = static_cast<long>(r);
  const Grid& g = u0.grid();
  const long n = static_cast<long>(g.n());
  SpectralVectorField out(g);
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const bool occupied = u0[0][idx] != 0.0 || u0[1][idx] != 0.0 || u0[2][idx] != 0.0;
    if (!occupied) return;
    const long m1 = q * static_cast<long>(i1);
    const long m2 = q * g.signed_mode(i2);
    const long m3 = q * g.signed_mode(i3);
    if (m1 >= n / 2 || std::abs(m2) >= n / 2 || std::abs(m3) >= n / 2) {
      throw IncompatibleScaling("rescale_in_box: rescaled spectrum leaves the grid lattice");
    }
    const std::size_t j2 = static_cast<std::size_t>((m2 + n) % n);
    const std::size_t j3 = static_cast<std::size_t>((m3 + n) % n);
    const std::size_t dst = g.spectral_index(j3, j2, static_cast<std::size_t>(m1));
    for (std::size_t c = 0; c < 3; ++c) out[c][dst] = static_cast<double>(q) * u0[c][idx];
  });
  if (u0.solenoidal_checked()) out.mark_solenoidal();
  return out;
}

}  // namespace critns
