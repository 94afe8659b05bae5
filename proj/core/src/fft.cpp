#include "critns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "critns/error.hpp"

namespace critns {

namespace detail {
void* fft_aligned_alloc(std::size_t bytes) { return fftw_malloc(bytes == 0 ? 1 : bytes); }
void fft_aligned_free(void* p) noexcept { fftw_free(p); }
}  // namespace detail

namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// Plans are created under a lock with FFTW_ESTIMATE so the chosen algorithm
// (and therefore every rounding pattern) is identical across runs.
// Execution through the new-array interface is thread-safe.
const PlanPair& plans_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const int ni = static_cast<int>(n);
  const std::size_t real_size = n * n * n;
  const std::size_t spec_size = n * n * (n / 2 + 1);
  double* r = fftw_alloc_real(real_size);
  fftw_complex* c = fftw_alloc_complex(spec_size);
  PlanPair p;
  p.r2c = fftw_plan_dft_r2c_3d(ni, ni, ni, r, c, FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r_3d(ni, ni, ni, c, r, FFTW_ESTIMATE);
  fftw_free(r);
  fftw_free(c);
  if (p.r2c == nullptr || p.c2r == nullptr) throw Error("FFT planning failed");
  return cache.emplace(n, p).first->second;
}

bool aligned(const void* p) { return fftw_alignment_of(static_cast<double*>(const_cast<void*>(p))) == 0; }

}  // namespace

void forward_fft(const Grid& grid, std::span<const double> samples,
                 std::span<std::complex<double>> coeffs) {
  if (samples.size() != grid.real_size() || coeffs.size() != grid.spectral_size()) {
    throw DimensionMismatch("forward_fft: buffer sizes do not match grid");
  }
  const PlanPair& p = plans_for(grid.n());
  // r2c out-of-place preserves its input.
  if (aligned(samples.data()) && aligned(coeffs.data())) {
    fftw_execute_dft_r2c(p.r2c, const_cast<double*>(samples.data()),
                         reinterpret_cast<fftw_complex*>(coeffs.data()));
  } else {
    RealBuffer in(samples.begin(), samples.end());
    ComplexBuffer out(coeffs.size());
    fftw_execute_dft_r2c(p.r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    std::copy(out.begin(), out.end(), coeffs.begin());
  }
  const double scale = 1.0 / static_cast<double>(grid.real_size());
  for (auto& c : coeffs) c *= scale;
}

void inverse_fft(const Grid& grid, std::span<const std::complex<double>> coeffs,
                 std::span<double> samples) {
  if (samples.size() != grid.real_size() || coeffs.size() != grid.spectral_size()) {
    throw DimensionMismatch("inverse_fft: buffer sizes do not match grid");
  }
  const PlanPair& p = plans_for(grid.n());
  // c2r destroys its input, so always work on a scratch copy.
  thread_local ComplexBuffer scratch;
  scratch.assign(coeffs.begin(), coeffs.end());
  if (aligned(samples.data())) {
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), samples.data());
  } else {
    RealBuffer out(samples.size());
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
    std::copy(out.begin(), out.end(), samples.begin());
  }
}

}  // namespace critns
