#include "freelevy/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "freelevy/cplx.hpp"
#include "freelevy/error.hpp"

namespace freelevy {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  // valid for x >= 0.5
  const double xm = x - 1.0;
  double a = kLanczos[0];
  const double t = xm + kLanczosG + 0.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (xm + i);
  return 0.5 * std::log(2.0 * kPi) + (xm + 0.5) * std::log(t) - t + std::log(a);
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

void validate(const SeriesControl& ctl) {
  if (ctl.max_terms < 64) throw Error(ErrorKind::Domain, "SeriesControl.max_terms must be >= 64");
  if (!(ctl.rel_tol > 0.0 && ctl.rel_tol <= 1e-10))
    throw Error(ErrorKind::Domain, "SeriesControl.rel_tol must lie in (0, 1e-10]");
}

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) throw Error(ErrorKind::Domain, "log_gamma needs x > 0");
  if (x < 0.5) {
    // reflection keeps the Lanczos sum in its accurate range
    return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
  }
  // Lanczos loses a few ulps near the zeros of log Gamma; shift upward there
  if (x < 3.0) {
    double shift = 0.0, y = x;
    while (y < 3.0) {
      shift += std::log(y);
      y += 1.0;
    }
    return lanczos_log_gamma(y) - shift;
  }
  return lanczos_log_gamma(x);
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

double gamma_signed(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "gamma of non-finite argument");
  if (is_nonpositive_integer(x)) throw Error(ErrorKind::Pole, "gamma pole at " + std::to_string(x));
  if (x > 0.0) return gamma_fn(x);
  // Gamma(x) = pi / (sin(pi x) Gamma(1-x))
  return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
}

double beta(double p, double q) {
  if (!std::isfinite(p) || !std::isfinite(q)) throw Error(ErrorKind::Domain, "beta of non-finite argument");
  if (is_nonpositive_integer(p) || is_nonpositive_integer(q) || is_nonpositive_integer(p + q))
    throw Error(ErrorKind::Pole, "beta pole");
  if (p > 0.0 && q > 0.0) return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
  return gamma_signed(p) * gamma_signed(q) / gamma_signed(p + q);
}

double hyp2f1_series(double a, double b, double c, double z, const SeriesControl& ctl) {
  validate(ctl);
  if (is_nonpositive_integer(c)) throw Error(ErrorKind::Pole, "hyp2f1 with c a non-positive integer");
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::Domain, "hyp2f1 series needs |z| < 1");
  if (z == 0.0) return 1.0;
  double term = 1.0, sum = 1.0;
  int quiet = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    const double an = a + n, bn = b + n;
    if (an == 0.0 || bn == 0.0) return sum;  // terminating polynomial
    term *= an * bn / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (!std::isfinite(sum)) throw Error(ErrorKind::Convergence, "hyp2f1 series overflow");
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
      // the ratio tends to z, so a few quiet terms in a row means we are past the hump
      if (++quiet >= 3 && std::abs((an * bn) / ((c + n) * (n + 1.0)) * z) < 1.0) return sum;
    } else {
      quiet = 0;
    }
  }
  throw Error(ErrorKind::Convergence, "hyp2f1 series did not converge within max_terms");
}

double hyp2f1(double a, double b, double c, double z, const SeriesControl& ctl) {
  validate(ctl);
  if (!std::isfinite(z)) throw Error(ErrorKind::Domain, "hyp2f1 of non-finite z");
  if (is_nonpositive_integer(c)) throw Error(ErrorKind::Pole, "hyp2f1 with c a non-positive integer");
  if (!(z <= 0.0 || std::abs(z) < 1.0)) throw Error(ErrorKind::Domain, "hyp2f1 needs z <= 0 or |z| < 1");
  if (std::abs(z) <= 0.5) return hyp2f1_series(a, b, c, z, ctl);
  // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
  const double w = z / (z - 1.0);
  return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w, ctl);
}

namespace {

// sum_k s^k (x/2)^{2k+1} / (k! (k+1)!) with s = -1 (J1) or +1 (I1)
double bessel1_series(double x, double s) {
  if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "bessel of non-finite argument");
  if (x == 0.0) return 0.0;
  const double h = 0.5 * x;
  const double q = s * h * h;
  double term = h, sum = h;
  for (int k = 1; k < 400; ++k) {
    term *= q / (k * (k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > std::abs(h)) break;
  }
  return sum;
}

// Hankel asymptotics, used for J1 when the alternating series would cancel
double bessel_j1_asymptotic(double x) {
  const double ax = std::abs(x);
  const double mu = 4.0;
  double p = 1.0, q = 0.0;
  const double z8 = 8.0 * ax;
  // P ~ sum (-1)^k a_{2k}/z^{2k}, Q ~ sum (-1)^k a_{2k+1}/z^{2k+1}
  double ak = 1.0;
  double best = 1e300;
  for (int k = 1; k < 60; ++k) {
    const double m = 2.0 * k - 1.0;
    ak *= (mu - m * m) / (k * z8);
    if (std::abs(ak) > best) break;
    best = std::abs(ak);
    const int r = k % 4;
    if (r == 1) q += ak;
    else if (r == 2) p -= ak;
    else if (r == 3) q -= ak;
    else p += ak;
  }
  const double chi = ax - 0.75 * kPi;
  const double v = std::sqrt(2.0 / (kPi * ax)) * (p * std::cos(chi) - q * std::sin(chi));
  return x < 0 ? -v : v;
}

}  // namespace

double bessel_j1(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "bessel_j1 of non-finite argument");
  if (std::abs(x) <= 16.0) {
    // long double keeps the alternating sum accurate up to |x| = 16
    const long double h = 0.5L * x;
    const long double q = -h * h;
    long double term = h, sum = h;
    for (int k = 1; k < 400; ++k) {
      term *= q / (k * (k + 1.0L));
      sum += term;
      if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > std::fabs(h)) break;
    }
    return static_cast<double>(sum);
  }
  return bessel_j1_asymptotic(x);
}

double bessel_i1(double x) { return bessel1_series(x, 1.0); }

}  // namespace freelevy
