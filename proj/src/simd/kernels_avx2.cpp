// AVX2/FMA variants. Compiled with -mavx2 -mfma; only reached after a CPUID
// check in kernels.cpp.

#include <immintrin.h>

#include "gspec/simd/kernels.hpp"

namespace gspec::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
  }
  for (; i + 4 <= n; i += 4)
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void sub_scale_avx2(const double* a, const double* b, double scale, double* out,
                    std::size_t n) {
  const __m256d vs = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vs));
  }
  for (; i < n; ++i) out[i] = (a[i] - b[i]) * scale;
}

void power_sums_avx2(const double* x, std::size_t n, std::size_t max_order, double* out) {
  constexpr std::size_t kMaxAcc = 32;
  for (std::size_t p = 0; p < max_order; ++p) out[p] = 0.0;
  // Orders are processed in chunks so the accumulators stay in registers/L1.
  for (std::size_t base = 0; base < max_order; base += kMaxAcc) {
    const std::size_t count = (max_order - base < kMaxAcc) ? max_order - base : kMaxAcc;
    __m256d acc[kMaxAcc];
    for (std::size_t p = 0; p < count; ++p) acc[p] = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_loadu_pd(x + i);
      __m256d pw = v;
      for (std::size_t p = 0; p < base; ++p) pw = _mm256_mul_pd(pw, v);
      for (std::size_t p = 0; p < count; ++p) {
        acc[p] = _mm256_add_pd(acc[p], pw);
        pw = _mm256_mul_pd(pw, v);
      }
    }
    for (std::size_t p = 0; p < count; ++p) out[base + p] = hsum(acc[p]);
    for (; i < n; ++i) {
      double pw = x[i];
      for (std::size_t p = 0; p < base; ++p) pw *= x[i];
      for (std::size_t p = 0; p < count; ++p) {
        out[base + p] += pw;
        pw *= x[i];
      }
    }
  }
}

double ratio_sum_avx2(double xi, const double* x, std::size_t n) {
  const __m256d vxi = _mm256_set1_pd(xi);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_div_pd(v, _mm256_fmadd_pd(vxi, v, one)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] / (1.0 + xi * x[i]);
  return s;
}

void split_sum_avx2(const double* x, std::size_t n, double* pos, double* neg) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d p = zero;
  __m256d m = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    p = _mm256_add_pd(p, _mm256_max_pd(v, zero));
    m = _mm256_add_pd(m, _mm256_min_pd(v, zero));
  }
  double ps = hsum(p);
  double ms = hsum(m);
  for (; i < n; ++i) {
    if (x[i] > 0.0) ps += x[i];
    else ms += x[i];
  }
  *pos = ps;
  *neg = ms;
}

void matvec_avx2(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_avx2(a + r * cols, x, cols);
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{
      "avx2",          sum_avx2,       dot_avx2,       axpy_avx2,   sub_scale_avx2,
      power_sums_avx2, ratio_sum_avx2, split_sum_avx2, matvec_avx2,
  };
  return table;
}

}  // namespace gspec::simd
