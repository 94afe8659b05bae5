#pragma once

#include <cstdint>
#include <string>

#include "critns/field.hpp"

namespace critns::datagen {

/// (d2 phi, -d1 phi, 0). Solenoidal and mean-free by construction.
SpectralVectorField stream_function_data(const SpectralScalarField& phi);

/// phi_eps = ((-ln eps)^{1/5} / eps) * envelope(x) * cos(x3 / eps).
///
/// 1/eps must be an integer multiple of 2 pi / l, and the shifted spectrum must
/// stay inside the grid. The stream-function data of this profile has an
/// O(1/eps) velocity with a slowly growing B^{-1}_{inf,inf} norm.
SpectralScalarField oscillatory_profile(double eps, const SpectralScalarField& envelope);

/// sin(k0 x1) sin(k0 x2) with k0 = 2 pi / l.
SpectralScalarField default_envelope(const Grid& grid);

/// a (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0) in units of k0 = 2 pi / l.
SpectralVectorField taylor_green(const Grid& grid, double a);

/// Random-phase solenoidal field on 0 < |m| <= k_max (lattice units).
///
/// Mode magnitudes are deterministic so that the energy of integer shell s is
/// proportional to s^slope; phases and polarizations come from mt19937_64(seed).
/// The result is rescaled to RMS velocity `amplitude`.
SpectralVectorField random_solenoidal(const Grid& grid, std::uint64_t seed, double slope, int k_max,
                                      double amplitude);

/// u(x) = (sin(k0 x2), 0, 0) scaled by a: nonlinear term vanishes identically.
SpectralVectorField shear(const Grid& grid, double a);

enum class Family { zero, shear, stream_function, taylor_green, random_solenoidal };

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct DataFamilySpec {
  Family family = Family::taylor_green;
  double amplitude = 1.0;
  double eps = 0.25;
  double slope = -5.0 / 3.0;
  int k_max = 4;
  std::uint64_t seed = 0;
};

SpectralVectorField make_datum(const Grid& grid, const DataFamilySpec& spec);

}  // namespace critns::datagen
