#include <immintrin.h>

#include "freelevy/kernels.hpp"

namespace freelevy::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

cplx cauchy_sum(const double* x, const double* w, std::size_t n, cplx z) {
  const double zr = z.real(), zi = z.imag();
  const __m256d vzr = _mm256_set1_pd(zr);
  const __m256d vzi2 = _mm256_set1_pd(zi * zi);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(vzr, _mm256_loadu_pd(x + i));
    const __m256d den = _mm256_fmadd_pd(d, d, vzi2);
    const __m256d s = _mm256_div_pd(_mm256_loadu_pd(w + i), den);
    acc_re = _mm256_fmadd_pd(s, d, acc_re);
    acc_s = _mm256_add_pd(acc_s, s);
  }
  double re = hsum(acc_re);
  double ssum = hsum(acc_s);
  for (; i < n; ++i) {
    const double d = zr - x[i];
    const double s = w[i] / (d * d + zi * zi);
    re += s * d;
    ssum += s;
  }
  return {re, -ssum * zi};
}

void power_sums(const double* v, std::size_t n, int kmax, double* out) {
  for (int k = 0; k < kmax; ++k) out[k] = 0.0;
  std::size_t i = 0;
  constexpr int kLanes = 16;
  __m256d acc[kLanes];
  const int kk = kmax < kLanes ? kmax : kLanes;
  for (int k = 0; k < kk; ++k) acc[k] = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v + i);
    __m256d p = x;
    for (int k = 0; k < kk; ++k) {
      acc[k] = _mm256_add_pd(acc[k], p);
      p = _mm256_mul_pd(p, x);
    }
  }
  for (int k = 0; k < kk; ++k) out[k] = hsum(acc[k]);
  // orders past the register budget and the ragged tail go through the scalar loop
  for (std::size_t j = kk == kmax ? i : 0; j < n; ++j) {
    double p = 1.0;
    for (int k = 0; k < kmax; ++k) {
      p *= v[j];
      if (j >= i || k >= kk) out[k] += p;
    }
  }
}

}  // namespace freelevy::kernels::avx2
