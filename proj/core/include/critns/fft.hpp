#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "critns/grid.hpp"

namespace critns {

namespace detail {
void* fft_aligned_alloc(std::size_t bytes);
void fft_aligned_free(void* p) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage suitable for the FFT backend.
template <class T>
struct FftAllocator {
  using value_type = T;
  FftAllocator() = default;
  template <class U>
  FftAllocator(const FftAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) {
    void* p = detail::fft_aligned_alloc(n * sizeof(T));
    if (p == nullptr) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { detail::fft_aligned_free(p); }
  template <class U>
  bool operator==(const FftAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, FftAllocator<double>>;
using ComplexBuffer = std::vector<std::complex<double>, FftAllocator<std::complex<double>>>;

/// Real samples -> normalized half-spectrum coefficients (divides by n^3).
void forward_fft(const Grid& grid, std::span<const double> samples,
                 std::span<std::complex<double>> coeffs);

/// Half-spectrum coefficients -> real samples. The input is not modified.
void inverse_fft(const Grid& grid, std::span<const std::complex<double>> coeffs,
                 std::span<double> samples);

}  // namespace critns
