#include "freelevy/mellin_moments.hpp"

#include <cmath>
#include <functional>

#include "freelevy/cplx.hpp"
#include "freelevy/error.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/quadrature.hpp"

namespace freelevy {

namespace {

constexpr int kPanels = 60;
constexpr int kOrder = 20;

// Integral over [0, 1/2] of w(x) g(x) with w(x) = x^p, graded toward 0.
// Returns the per-panel contributions, innermost last.
std::vector<double> graded_toward_zero(const std::function<double(double)>& g, double p) {
  const QuadRule gl = gauss_legendre(kOrder);
  std::vector<double> parts;
  for (int k = 1; k <= kPanels; ++k) {
    const double hi = std::ldexp(1.0, -k), lo = std::ldexp(1.0, -k - 1);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < kOrder; ++i) {
      const double x = mid + half * gl.nodes[i];
      s += gl.weights[i] * std::pow(x, p) * g(x);
    }
    parts.push_back(half * s);
  }
  // last piece [0, 2^-61] with x^p as the Jacobi weight
  const double a = std::ldexp(1.0, -kPanels - 1);
  const QuadRule gj = gauss_jacobi(kOrder, 0.0, p);
  double s = 0.0;
  for (int i = 0; i < kOrder; ++i) s += gj.weights[i] * g(0.5 * a * (1.0 + gj.nodes[i]));
  parts.push_back(s * std::pow(0.5 * a, p + 1.0));
  return parts;
}

double settle(const std::vector<double>& parts, const char* side) {
  double total = 0.0;
  for (double v : parts) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Divergence, std::string("non-finite integrand near ") + side);
    total += v;
  }
  // an integrable endpoint singularity shrinks the dyadic panels geometrically;
  // equal or growing contributions mean x^-1 or worse
  int flat = 0;
  for (size_t k = parts.size() - 12; k + 1 < parts.size() - 1; ++k)
    if (std::abs(parts[k + 1]) >= 0.999 * std::abs(parts[k]) && parts[k] != 0.0) ++flat;
  if (flat >= 10) throw Error(ErrorKind::Divergence, std::string("Mellin integral diverges at ") + side);
  return total;
}

double log_term_gamma_ratio(double x, double y) {
  // log Gamma(1+x+y) - log Gamma(1+x) - log Gamma(2+y)
  return log_gamma(1.0 + x + y) - log_gamma(1.0 + x) - log_gamma(2.0 + y);
}

}  // namespace

double hm_mellin(const MeasureRep& mu, double gamma) {
  if (!(gamma > -1.0 && gamma < 1.0) || gamma == 0.0)
    throw Error(ErrorKind::Domain, "gamma must lie in (-1, 1) without 0");
  // x^gamma (1-x)^-gamma S(x-1)^-gamma, with the power of the nearer endpoint used as weight.
  // S(x-1) = Sigma((x-1)/x), written so that neither endpoint rounds onto the boundary.
  const auto left = graded_toward_zero(
      [&](double x) { return std::pow(1.0 - x, -gamma) * std::pow(sigma_transform(mu, 1.0 - 1.0 / x), -gamma); }, gamma);
  const auto right = graded_toward_zero(
      [&](double y) {
        const double x = 1.0 - y;
        return std::pow(x, gamma) * std::pow(sigma_transform(mu, -y / x), -gamma);
      },
      -gamma);
  const double integral = settle(left, "0") + settle(right, "1");
  return std::sin(kPi * gamma) / (kPi * gamma) * integral;
}

double free_bessel_moment_closed_form(double r, double s, double gamma, double t, const SeriesControl& ctl) {
  if (!(r >= 1.0) || !(s > 1.0) || !(gamma > 0.0) || !(t > 0.0))
    throw Error(ErrorKind::Domain, "closed form needs r >= 1, s > 1, gamma > 0, t > 0");
  const double xi = 1.0 / t;
  const double gx = gamma * xi;
  const double lpre = -r * gamma * std::log(xi) + gamma * std::log(s - 1.0) - log_gamma(2.0 + gamma * (r - 1.0)) +
                      log_gamma(gx + gamma * (r - 1.0) + 1.0) - log_gamma(gx + 1.0);
  const double f = hyp2f1(-gamma, gx + gamma * (r - 1.0) + 1.0, gamma * (r - 1.0) + 2.0, -1.0 / (s - 1.0), ctl);
  return std::exp(lpre) * f;
}

double free_bessel_moment_s1(double r, double gamma, double t) {
  if (!(r >= 0.0) || !(gamma > 0.0) || !(t > 0.0)) throw Error(ErrorKind::Domain, "s = 1 form needs r >= 0, gamma, t > 0");
  const double gx = gamma / t;
  return std::exp(r * gamma * std::log(t) + log_gamma(gx * (1.0 + t * r) + 1.0) - log_gamma(gx * t * r + 2.0) -
                  log_gamma(1.0 + gx));
}

SeriesResult nu_alpha_series(double alpha, double gamma, double t, double xi, const SeriesControl& ctl) {
  validate(ctl);
  if (!(alpha > 1.0 && alpha <= 2.0) || !(gamma > 0.0) || !(t >= 0.0) || !(xi > 0.0))
    throw Error(ErrorKind::Domain, "nu_alpha series needs alpha in (1,2], gamma, xi > 0, t >= 0");
  SeriesResult r;
  const double x = gamma * xi;
  const double A = gamma * xi * t;
  if (A == 0.0) {
    r.value = 1.0;
    r.terms = 1;
    return r;
  }
  const double la = std::log(A);
  double sum = 0.0;
  int quiet = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    const double y = n * (alpha - 1.0);
    const double term = std::exp(n * la - log_gamma(n + 1.0) + log_term_gamma_ratio(x, y));
    sum += term;
    r.terms = n + 1;
    if (!std::isfinite(sum)) throw Error(ErrorKind::Convergence, "nu_alpha series overflow");
    quiet = term <= ctl.rel_tol * sum ? quiet + 1 : 0;
    if (quiet >= 20) {
      // every later term is below K B^m / m!; see README for the derivation
      const int N = n + 1;
      const double yN = N * (alpha - 1.0);
      const double B = A * std::pow(std::exp(1.0) * (1.0 + x / (1.0 + yN)), alpha - 1.0);
      if (B < N + 1.0) {
        const double K = std::exp(1.0) / std::sqrt(2.0 * kPi * (1.0 + yN));
        const double tail = K * std::exp(N * std::log(B) - log_gamma(N + 1.0)) / (1.0 - B / (N + 1.0));
        if (tail <= ctl.rel_tol * sum) {
          r.value = sum;
          r.tail_bound = tail;
          return r;
        }
      }
    }
  }
  throw Error(ErrorKind::Convergence, "nu_alpha series did not settle within max_terms");
}

int nu_alpha_term_bound(double alpha, double gamma, double rel_tol) {
  const double D = std::pow(2.0 * std::exp(1.0), alpha - 1.0) * std::pow(gamma, alpha);
  for (int n = 1; n < 100000; ++n)
    if (n * std::log(D) - log_gamma(n + 1.0) < std::log(rel_tol)) return n + 20;
  return 100000;
}

double laplace_free_stable(double alpha, double gamma, const SeriesControl& ctl) {
  validate(ctl);
  if (!(alpha > 1.0 && alpha <= 2.0) || !(gamma >= 0.0))
    throw Error(ErrorKind::Domain, "Laplace transform needs alpha in (1,2], gamma >= 0");
  if (gamma == 0.0) return 1.0;
  const double lg = std::log(gamma);
  double sum = 0.0, prev = HUGE_VAL;
  int quiet = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    const double term = std::exp(n * alpha * lg - log_gamma(2.0 + (alpha - 1.0) * n) - log_gamma(n + 1.0));
    sum += term;
    quiet = (term <= ctl.rel_tol * sum && term <= prev) ? quiet + 1 : 0;
    prev = term;
    if (quiet >= 20) return sum;
  }
  throw Error(ErrorKind::Convergence, "Laplace series did not settle within max_terms");
}

SeriesResult multi_law_series(const std::vector<double>& alphas, const std::vector<double>& ps, double gamma, double t,
                              double xi, const SeriesControl& ctl) {
  validate(ctl);
  const size_t k = alphas.size();
  if (k == 0 || k > 3 || ps.size() != k) throw Error(ErrorKind::Domain, "multi-law series takes 1 to 3 laws");
  for (size_t i = 0; i < k; ++i) {
    if (!(alphas[i] > 1.0 && alphas[i] <= 2.0)) throw Error(ErrorKind::Domain, "each alpha must lie in (1, 2]");
    if (i > 0 && !(alphas[i] < alphas[i - 1])) throw Error(ErrorKind::Domain, "alphas must be strictly decreasing");
    if (!(ps[i] > 0.0)) throw Error(ErrorKind::Domain, "weights p must be positive");
  }
  if (!(gamma > 0.0) || !(t >= 0.0) || !(xi > 0.0)) throw Error(ErrorKind::Domain, "gamma, xi > 0 and t >= 0 required");
  SeriesResult r;
  const double x = gamma * xi;
  if (t == 0.0) {
    r.value = 1.0;
    r.terms = 1;
    return r;
  }
  std::vector<double> la(k);
  for (size_t i = 0; i < k; ++i) la[i] = std::log(gamma * xi * t * ps[i]);
  const double amin = alphas.back();
  double sum = 0.0;
  int quiet = 0;
  for (int d = 0; d < ctl.max_terms; ++d) {
    double diag = 0.0;
    std::vector<int> n(k, 0);
    // all compositions of d into k parts
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
      if (i + 1 == k) {
        n[i] = left;
        double lt = 0.0, y = 0.0;
        for (size_t j = 0; j < k; ++j) {
          lt += n[j] * la[j] - log_gamma(n[j] + 1.0);
          y += n[j] * (alphas[j] - 1.0);
        }
        diag += std::exp(lt + log_term_gamma_ratio(x, y));
        ++r.terms;
        return;
      }
      for (int m = 0; m <= left; ++m) {
        n[i] = m;
        rec(i + 1, left - m);
      }
    };
    rec(0, d);
    sum += diag;
    if (!std::isfinite(sum)) throw Error(ErrorKind::Convergence, "multi-law series overflow");
    quiet = diag <= ctl.rel_tol * sum ? quiet + 1 : 0;
    if (quiet >= 20) {
      const int D = d + 1;
      const double yD = D * (amin - 1.0);
      const double e1 = std::exp(1.0) * (1.0 + x / (1.0 + yD));
      double B = 0.0;
      for (size_t j = 0; j < k; ++j) B += std::exp(la[j]) * std::pow(e1, alphas[j] - 1.0);
      if (B < D + 1.0) {
        const double K = std::exp(1.0) / std::sqrt(2.0 * kPi * (1.0 + yD));
        const double tail = K * std::exp(D * std::log(B) - log_gamma(D + 1.0)) / (1.0 - B / (D + 1.0));
        if (tail <= ctl.rel_tol * sum) {
          r.value = sum;
          r.tail_bound = tail;
          return r;
        }
      }
    }
  }
  throw Error(ErrorKind::Convergence, "multi-law series did not settle");
}

MomentTable free_bessel_table(double r, double s, const std::vector<double>& gammas, double t) {
  MomentTable tab;
  tab.gammas = gammas;
  tab.t = t;
  for (double g : gammas) {
    tab.values.push_back(s == 1.0 ? free_bessel_moment_s1(r, g, t) : free_bessel_moment_closed_form(r, s, g, t));
    tab.limit_values.push_back(dh_moment(r, g));
  }
  return tab;
}

MomentTable nu_alpha_table(double alpha, const std::vector<double>& gammas, double t) {
  MomentTable tab;
  tab.gammas = gammas;
  tab.t = t;
  for (double g : gammas) {
    tab.values.push_back(nu_alpha_series(alpha, g, t, std::pow(t, -1.0 / alpha)).value);
    tab.limit_values.push_back(laplace_free_stable(alpha, g));
  }
  return tab;
}

}  // namespace freelevy
