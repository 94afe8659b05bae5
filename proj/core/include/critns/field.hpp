#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>

#include "critns/fft.hpp"
#include "critns/grid.hpp"

namespace critns {

/// Real samples of a scalar on the grid (x1-fastest).
class PhysicalField {
 public:
  explicit PhysicalField(Grid grid);
  PhysicalField(Grid grid, std::span<const double> samples);

  const Grid& grid() const { return grid_; }
  std::span<double> samples() { return data_; }
  std::span<const double> samples() const { return data_; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  std::size_t size() const { return data_.size(); }

  /// Fill from f(x1, x2, x3) evaluated at grid points.
  static PhysicalField sample(const Grid& grid, const std::function<double(double, double, double)>& f);

 private:
  Grid grid_;
  RealBuffer data_;
};

using PhysicalVectorField = std::array<PhysicalField, 3>;

/// Fourier coefficients of a real scalar in the half-spectrum layout.
class SpectralScalarField {
 public:
  explicit SpectralScalarField(Grid grid);

  static SpectralScalarField from_physical(const PhysicalField& f);
  PhysicalField to_physical() const;

  const Grid& grid() const { return grid_; }
  std::span<std::complex<double>> coeffs() { return c_; }
  std::span<const std::complex<double>> coeffs() const { return c_; }
  std::complex<double>& operator[](std::size_t i) { return c_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return c_[i]; }
  std::size_t size() const { return c_.size(); }

  std::complex<double> mean() const { return c_[0]; }
  /// max over k of |c(-k) - conj(c(k))| on the planes where both are stored.
  double hermitian_defect() const;
  /// Restore exact Hermitian symmetry on the self-conjugate planes.
  void symmetrize();
  double max_abs() const;

  SpectralScalarField& operator+=(const SpectralScalarField& o);
  SpectralScalarField& operator-=(const SpectralScalarField& o);
  SpectralScalarField& operator*=(double s);
  /// this += a * o
  SpectralScalarField& axpy(double a, const SpectralScalarField& o);

 private:
  Grid grid_;
  ComplexBuffer c_;
};

SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b);
SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b);
SpectralScalarField operator*(double s, SpectralScalarField a);

/// Three-component velocity-like field stored spectrally.
class SpectralVectorField {
 public:
  explicit SpectralVectorField(Grid grid);
  SpectralVectorField(SpectralScalarField c0, SpectralScalarField c1, SpectralScalarField c2);

  static SpectralVectorField from_physical(const PhysicalVectorField& f);
  PhysicalVectorField to_physical() const;

  const Grid& grid() const { return comp_[0].grid(); }
  SpectralScalarField& operator[](std::size_t i) { return comp_[i]; }
  const SpectralScalarField& operator[](std::size_t i) const { return comp_[i]; }

  /// True when every component's k=0 coefficient is below tol in magnitude.
  bool is_mean_free(double tol = 1e-14) const;
  /// max_k |k.u(k)| / max(1, max_k |u(k)|), derivative wavenumbers.
  double solenoidal_defect() const;
  /// Computes the defect, records the result, and returns it.
  bool verify_solenoidal(double tol = 1e-12);
  bool solenoidal_checked() const { return solenoidal_checked_; }
  void mark_solenoidal() { solenoidal_checked_ = true; }

  double hermitian_defect() const;
  double max_abs() const;

  SpectralVectorField& operator+=(const SpectralVectorField& o);
  SpectralVectorField& operator-=(const SpectralVectorField& o);
  SpectralVectorField& operator*=(double s);
  SpectralVectorField& axpy(double a, const SpectralVectorField& o);

 private:
  std::array<SpectralScalarField, 3> comp_;
  bool solenoidal_checked_ = false;
};

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator*(double s, SpectralVectorField a);

/// Symmetric 3x3 tensor field; only the six independent components are stored.
class SymmetricTensorField {
 public:
  explicit SymmetricTensorField(Grid grid);

  const Grid& grid() const { return comp_[0].grid(); }
  SpectralScalarField& operator()(std::size_t i, std::size_t j) { return comp_[slot(i, j)]; }
  const SpectralScalarField& operator()(std::size_t i, std::size_t j) const { return comp_[slot(i, j)]; }

  static constexpr std::size_t slot(std::size_t i, std::size_t j) {
    // (0,0) (1,1) (2,2) (0,1) (0,2) (1,2)
    if (i == j) return i;
    const std::size_t a = i < j ? i : j, b = i < j ? j : i;
    return a == 0 ? (b == 1 ? 3 : 4) : 5;
  }

 private:
  std::array<SpectralScalarField, 6> comp_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace critns
