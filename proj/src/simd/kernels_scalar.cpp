#include "gspec/simd/kernels.hpp"

namespace gspec::simd {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void sub_scale_scalar(const double* a, const double* b, double scale, double* out,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] - b[i]) * scale;
}

void power_sums_scalar(const double* x, std::size_t n, std::size_t max_order, double* out) {
  for (std::size_t p = 0; p < max_order; ++p) out[p] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i];
    for (std::size_t p = 0; p < max_order; ++p) {
      out[p] += v;
      v *= x[i];
    }
  }
}

double ratio_sum_scalar(double xi, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += x[j] / (1.0 + xi * x[j]);
  return s;
}

void split_sum_scalar(const double* x, std::size_t n, double* pos, double* neg) {
  double p = 0.0, m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > 0.0) p += x[i];
    else m += x[i];
  }
  *pos = p;
  *neg = m;
}

void matvec_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_scalar(a + i * cols, x, cols);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      "scalar",          sum_scalar,       dot_scalar,       axpy_scalar,   sub_scale_scalar,
      power_sums_scalar, ratio_sum_scalar, split_sum_scalar, matvec_scalar,
  };
  return table;
}

}  // namespace gspec::simd
