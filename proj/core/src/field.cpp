#include "critns/field.hpp"

#include <algorithm>
#include <cmath>

#include "critns/error.hpp"

namespace critns {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw GridMismatch(std::string(what) + ": fields live on different grids");
}

// ---------------------------------------------------------------- PhysicalField

PhysicalField::PhysicalField(Grid grid) : grid_(std::move(grid)), data_(grid_.real_size(), 0.0) {}

PhysicalField::PhysicalField(Grid grid, std::span<const double> samples)
    : grid_(std::move(grid)), data_(samples.begin(), samples.end()) {
  if (data_.size() != grid_.real_size()) {
    throw DimensionMismatch("sample count " + std::to_string(data_.size()) +
                            " does not match grid size " + std::to_string(grid_.real_size()));
  }
}

PhysicalField PhysicalField::sample(const Grid& grid,
                                    const std::function<double(double, double, double)>& f) {
  PhysicalField out(grid);
  const std::size_t n = grid.n();
  std::size_t idx = 0;
  for (std::size_t i3 = 0; i3 < n; ++i3) {
    const double x3 = grid.coordinate(i3);
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const double x2 = grid.coordinate(i2);
      for (std::size_t i1 = 0; i1 < n; ++i1, ++idx) out[idx] = f(grid.coordinate(i1), x2, x3);
    }
  }
  return out;
}

// ---------------------------------------------------------- SpectralScalarField

SpectralScalarField::SpectralScalarField(Grid grid)
    : grid_(std::move(grid)), c_(grid_.spectral_size(), std::complex<double>{}) {}

SpectralScalarField SpectralScalarField::from_physical(const PhysicalField& f) {
  SpectralScalarField out(f.grid());
  forward_fft(f.grid(), f.samples(), out.c_);
  return out;
}

PhysicalField SpectralScalarField::to_physical() const {
  PhysicalField out(grid_);
  inverse_fft(grid_, c_, out.samples());
  return out;
}

namespace {

// Visit pairs (k, -k) on the self-conjugate planes i1 = 0 and i1 = n/2.
template <class Fn>
void for_each_conjugate_pair(const Grid& g, Fn&& fn) {
  const std::size_t n = g.n();
  for (std::size_t i1 : {std::size_t{0}, n / 2}) {
    for (std::size_t i3 = 0; i3 < n; ++i3) {
      const std::size_t j3 = (n - i3) % n;
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        const std::size_t j2 = (n - i2) % n;
        fn(g.spectral_index(i3, i2, i1), g.spectral_index(j3, j2, i1));
      }
    }
  }
}

}  // namespace

double SpectralScalarField::hermitian_defect() const {
  double d = 0.0;
  for_each_conjugate_pair(grid_, [&](std::size_t a, std::size_t b) {
    d = std::max(d, std::abs(c_[a] - std::conj(c_[b])));
  });
  return d;
}

void SpectralScalarField::symmetrize() {
  for_each_conjugate_pair(grid_, [&](std::size_t a, std::size_t b) {
    if (a > b) return;
    const std::complex<double> avg = 0.5 * (c_[a] + std::conj(c_[b]));
    c_[a] = avg;
    c_[b] = std::conj(avg);
  });
}

double SpectralScalarField::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

SpectralScalarField& SpectralScalarField::operator+=(const SpectralScalarField& o) {
  require_same_grid(grid_, o.grid_, "operator+=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpectralScalarField& SpectralScalarField::operator-=(const SpectralScalarField& o) {
  require_same_grid(grid_, o.grid_, "operator-=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SpectralScalarField& SpectralScalarField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

SpectralScalarField& SpectralScalarField::axpy(double a, const SpectralScalarField& o) {
  require_same_grid(grid_, o.grid_, "axpy");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * o.c_[i];
  return *this;
}

SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b) { return a += b; }
SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b) { return a -= b; }
SpectralScalarField operator*(double s, SpectralScalarField a) { return a *= s; }

// ---------------------------------------------------------- SpectralVectorField

SpectralVectorField::SpectralVectorField(Grid grid)
    : comp_{SpectralScalarField(grid), SpectralScalarField(grid), SpectralScalarField(grid)} {}

SpectralVectorField::SpectralVectorField(SpectralScalarField c0, SpectralScalarField c1,
                                         SpectralScalarField c2)
    : comp_{std::move(c0), std::move(c1), std::move(c2)} {
  require_same_grid(comp_[0].grid(), comp_[1].grid(), "SpectralVectorField");
  require_same_grid(comp_[0].grid(), comp_[2].grid(), "SpectralVectorField");
}

SpectralVectorField SpectralVectorField::from_physical(const PhysicalVectorField& f) {
  return SpectralVectorField(SpectralScalarField::from_physical(f[0]),
                             SpectralScalarField::from_physical(f[1]),
                             SpectralScalarField::from_physical(f[2]));
}

PhysicalVectorField SpectralVectorField::to_physical() const {
  return {comp_[0].to_physical(), comp_[1].to_physical(), comp_[2].to_physical()};
}

bool SpectralVectorField::is_mean_free(double tol) const {
  return std::all_of(comp_.begin(), comp_.end(),
                     [tol](const SpectralScalarField& c) { return std::abs(c.mean()) <= tol; });
}

double SpectralVectorField::solenoidal_defect() const {
  const Grid& g = grid();
  double max_div = 0.0;
  for_each_mode(g, [&](std::size_t idx, std::size_t i1, std::size_t i2, std::size_t i3, double) {
    const std::complex<double> div =
        g.kd_half(i1) * comp_[0][idx] + g.kd_full(i2) * comp_[1][idx] + g.kd_full(i3) * comp_[2][idx];
    max_div = std::max(max_div, std::abs(div));
  });
  return max_div / std::max(1.0, max_abs());
}

bool SpectralVectorField::verify_solenoidal(double tol) {
  solenoidal_checked_ = solenoidal_defect() <= tol;
  return solenoidal_checked_;
}

double SpectralVectorField::hermitian_defect() const {
  return std::max({comp_[0].hermitian_defect(), comp_[1].hermitian_defect(), comp_[2].hermitian_defect()});
}

double SpectralVectorField::max_abs() const {
  return std::max({comp_[0].max_abs(), comp_[1].max_abs(), comp_[2].max_abs()});
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& o) {
  for (std::size_t i = 0; i < 3; ++i) comp_[i] += o.comp_[i];
  solenoidal_checked_ = solenoidal_checked_ && o.solenoidal_checked_;
  return *this;
}

SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& o) {
  for (std::size_t i = 0; i < 3; ++i) comp_[i] -= o.comp_[i];
  solenoidal_checked_ = solenoidal_checked_ && o.solenoidal_checked_;
  return *this;
}

SpectralVectorField& SpectralVectorField::operator*=(double s) {
  for (auto& c : comp_) c *= s;
  return *this;
}

SpectralVectorField& SpectralVectorField::axpy(double a, const SpectralVectorField& o) {
  for (std::size_t i = 0; i < 3; ++i) comp_[i].axpy(a, o.comp_[i]);
  solenoidal_checked_ = solenoidal_checked_ && o.solenoidal_checked_;
  return *this;
}

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) { return a += b; }
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) { return a -= b; }
SpectralVectorField operator*(double s, SpectralVectorField a) { return a *= s; }

// --------------------------------------------------------- SymmetricTensorField

SymmetricTensorField::SymmetricTensorField(Grid grid)
    : comp_{SpectralScalarField(grid), SpectralScalarField(grid), SpectralScalarField(grid),
            SpectralScalarField(grid), SpectralScalarField(grid), SpectralScalarField(grid)} {}

}  // namespace critns
