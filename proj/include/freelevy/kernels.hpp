#pragma once

#include <cstddef>

#include "freelevy/cplx.hpp"

namespace freelevy::kernels {

enum class Backend { Scalar, Avx2 };

// Best backend the running CPU supports (AVX2 on x86-64 when available).
Backend detected_backend();
Backend active_backend();
// Force a backend; requesting Avx2 on a CPU without it falls back to Scalar.
void set_backend(Backend b);
const char* backend_name(Backend b);

// sum_i w[i] / (z - x[i])
cplx cauchy_sum(const double* x, const double* w, std::size_t n, cplx z);

// out[k-1] = sum_i v[i]^k for k = 1..kmax
void power_sums(const double* v, std::size_t n, int kmax, double* out);

namespace scalar {
cplx cauchy_sum(const double* x, const double* w, std::size_t n, cplx z);
void power_sums(const double* v, std::size_t n, int kmax, double* out);
}  // namespace scalar

namespace avx2 {
cplx cauchy_sum(const double* x, const double* w, std::size_t n, cplx z);
void power_sums(const double* v, std::size_t n, int kmax, double* out);
}  // namespace avx2

}  // namespace freelevy::kernels
