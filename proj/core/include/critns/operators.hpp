#pragma once

#include <array>

#include "critns/field.hpp"

namespace critns {

/// Leray projection: per mode u -> (I - k k^T / |k|^2) u, identity at k = 0.
SpectralVectorField leray_project(const SpectralVectorField& u);

/// Heat semigroup e^{t Delta}: multiplies each mode by exp(-|k|^2 t).
SpectralVectorField heat_semigroup(const SpectralVectorField& u, double t);
SpectralScalarField heat_semigroup(const SpectralScalarField& u, double t);

/// (-Delta)^s: multiplies each mode by |k|^{2s}. For s > 0 the k=0 mode is zeroed;
/// for s < 0 the input must be mean-free.
SpectralVectorField fractional_laplacian(const SpectralVectorField& u, double s);

/// True if the stored mode survives the 2/3-rule truncation (|m| <= n/3 in lattice units).
bool in_dealiased_band(const Grid& g, std::size_t i1, std::size_t i2, std::size_t i3);
SpectralVectorField dealias(const SpectralVectorField& u);
SpectralScalarField dealias(const SpectralScalarField& u);

/// Nu = -div(u (x) u), pseudo-spectral with 2/3-rule dealiasing of inputs and output.
SpectralVectorField nonlinear_term(const SpectralVectorField& u);

/// div(T) for a symmetric tensor field: (div T)_i = sum_j d_j T_ij.
SpectralVectorField tensor_divergence(const SymmetricTensorField& t);

/// u_i u_j products formed in physical space (inputs dealiased first).
SymmetricTensorField outer_product(const SpectralVectorField& u);

/// (a . grad) b, dealiased.
SpectralVectorField advective_terms(const SpectralVectorField& a, const SpectralVectorField& b);

SpectralVectorField gradient(const SpectralScalarField& f);
SpectralScalarField divergence(const SpectralVectorField& u);
SpectralVectorField laplacian(const SpectralVectorField& u);

/// Physical-space gradient tensor, entry [3*i + j] = d_j u_i.
std::array<PhysicalField, 9> gradient_physical(const SpectralVectorField& u);

/// lambda * u0(lambda x), represented on the grid of period l / lambda (same n).
SpectralVectorField rescale_field(const SpectralVectorField& u0, double lambda);

/// lambda * u0(lambda x) on the same box. Requires integer lambda >= 1 whose
/// image of the occupied spectrum stays inside the lattice.
SpectralVectorField rescale_in_box(const SpectralVectorField& u0, double lambda);

}  // namespace critns
