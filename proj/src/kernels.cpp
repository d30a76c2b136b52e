#include "freelevy/kernels.hpp"

#include <atomic>

namespace freelevy::kernels {

namespace scalar {

cplx cauchy_sum(const double* x, const double* w, std::size_t n, cplx z) {
  const double zr = z.real(), zi = z.imag();
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = zr - x[i];
    const double s = w[i] / (d * d + zi * zi);
    re += s * d;
    im -= s * zi;
  }
  return {re, im};
}

void power_sums(const double* v, std::size_t n, int kmax, double* out) {
  for (int k = 0; k < kmax; ++k) out[k] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k < kmax; ++k) {
      p *= v[i];
      out[k] += p;
    }
  }
}

}  // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(FREELEVY_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar};
  return b;
}

}  // namespace

#if !defined(FREELEVY_HAVE_AVX2_TU)
namespace avx2 {
cplx cauchy_sum(const double* x, const double* w, std::size_t n, cplx z) {
  return scalar::cauchy_sum(x, w, n, z);
}
void power_sums(const double* v, std::size_t n, int kmax, double* out) { scalar::power_sums(v, n, kmax, out); }
}  // namespace avx2
#endif

Backend detected_backend() { return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar; }
Backend active_backend() { return current().load(); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !cpu_has_avx2()) b = Backend::Scalar;
  current().store(b);
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

cplx cauchy_sum(const double* x, const double* w, std::size_t n, cplx z) {
  return active_backend() == Backend::Avx2 ? avx2::cauchy_sum(x, w, n, z) : scalar::cauchy_sum(x, w, n, z);
}

void power_sums(const double* v, std::size_t n, int kmax, double* out) {
  if (active_backend() == Backend::Avx2) avx2::power_sums(v, n, kmax, out);
  else scalar::power_sums(v, n, kmax, out);
}

}  // namespace freelevy::kernels
