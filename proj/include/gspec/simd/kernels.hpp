#pragma once

// Data-parallel inner loops used across the library.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds
// with GSPEC_HAVE_AVX2, an AVX2/FMA variant. The variant is chosen once at
// first use from the running CPU; setting GSPEC_SIMD=scalar in the
// environment forces the reference path. Vector variants may reassociate
// sums, so results agree with the reference to rounding, not bitwise.

#include <cstddef>
#include <span>
#include <string_view>

namespace gspec::simd {

struct KernelTable {
  std::string_view name;

  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out = (a - b) * scale
  void (*sub_scale)(const double* a, const double* b, double scale, double* out,
                    std::size_t n);
  // out[p] = sum_i x_i^(p+1) for p < max_order
  void (*power_sums)(const double* x, std::size_t n, std::size_t max_order, double* out);
  // sum_j x_j / (1 + xi * x_j)
  double (*ratio_sum)(double xi, const double* x, std::size_t n);
  // sum of positive entries and sum of negative entries
  void (*split_sum)(const double* x, std::size_t n, double* pos, double* neg);
  // y = A x for row-major A (rows x cols)
  void (*matvec)(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 double* y);
};

const KernelTable& scalar_table();

// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// The table selected for this process.
const KernelTable& active();

inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}

inline void sub_scale(std::span<const double> a, std::span<const double> b, double scale,
                      std::span<double> out) {
  active().sub_scale(a.data(), b.data(), scale, out.data(), a.size());
}

inline void power_sums(std::span<const double> x, std::span<double> out) {
  active().power_sums(x.data(), x.size(), out.size(), out.data());
}

inline double ratio_sum(double xi, std::span<const double> x) {
  return active().ratio_sum(xi, x.data(), x.size());
}

inline void split_sum(std::span<const double> x, double& pos, double& neg) {
  active().split_sum(x.data(), x.size(), &pos, &neg);
}

inline void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
                   std::span<const double> x, std::span<double> y) {
  active().matvec(a.data(), rows, cols, x.data(), y.data());
}

}  // namespace gspec::simd
