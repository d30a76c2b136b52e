#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace freelevy {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// log(1+w) without losing digits when |w| is small.
inline cplx clog1p(cplx w) {
  const double a = w.real(), b = w.imag();
  if (std::abs(a) < 0.5 && std::abs(b) < 0.5) {
    return {0.5 * std::log1p(2.0 * a + a * a + b * b), std::atan2(b, 1.0 + a)};
  }
  return std::log(1.0 + w);
}

// exp(w)-1 with the same care.
inline cplx cexpm1(cplx w) {
  const double a = w.real(), b = w.imag();
  const double em1 = std::expm1(a);
  const double s = std::sin(0.5 * b);
  return {em1 * std::cos(b) - 2.0 * s * s, (em1 + 1.0) * std::sin(b)};
}

// Argument in (-3pi/2, pi/2]: continuous on the slit plane that keeps the
// closed first quadrant out, i.e. on (i C+) u C- and on the negative axis.
inline double arg_omega(cplx w) {
  double a = std::atan2(w.imag(), w.real());
  if (a > 0.5 * kPi) a -= 2.0 * kPi;
  return a;
}

inline cplx log_omega(cplx w) { return {std::log(std::abs(w)), arg_omega(w)}; }

// Argument in [-pi, 0] for points of the closed lower half-plane; a
// slightly positive imaginary part is treated as rounding noise.
inline double arg_lower(cplx w) {
  double im = w.imag();
  if (!(im < 0.0)) im = -0.0;
  return std::atan2(im, w.real());
}

inline cplx log_lower(cplx w) { return {std::log(std::abs(w)), arg_lower(w)}; }

inline bool finite(cplx w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

}  // namespace freelevy
