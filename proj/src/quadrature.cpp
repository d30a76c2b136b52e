#include "freelevy/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "freelevy/cplx.hpp"
#include "freelevy/error.hpp"
#include "freelevy/specfun.hpp"

namespace freelevy {

QuadRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::Domain, "gauss_legendre needs n >= 1");
  static std::mutex mu;
  static std::map<int, QuadRule> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, r);
  return r;
}

QuadRule gauss_jacobi(int n, double a, double b) {
  if (n < 1 || !(a > -1.0) || !(b > -1.0)) throw Error(ErrorKind::Domain, "gauss_jacobi parameters");
  QuadRule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  const double alfbet = a + b;
  double z = 0.0, pp = 0.0, p1 = 0.0, p2 = 0.0;
  // root finding with the classical asymptotic starting values, largest root first
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      const double an = a / n, bn = b / n;
      const double r1 = (1.0 + a) * (2.78 / (4.0 + n * n) + 0.768 * an / n);
      const double r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
      z = 1.0 - r1 / r2;
    } else if (i == 1) {
      const double r1 = (4.1 + a) / ((1.0 + a) * (1.0 + 0.156 * a));
      const double r2 = 1.0 + 0.06 * (n - 8.0) * (1.0 + 0.12 * a) / n;
      const double r3 = 1.0 + 0.012 * b * (1.0 + 0.25 * std::abs(a)) / n;
      z -= (1.0 - z) * r1 * r2 * r3;
    } else if (i == 2) {
      const double r1 = (1.67 + 0.28 * a) / (1.0 + 0.37 * a);
      const double r2 = 1.0 + 0.22 * (n - 8.0) / n;
      const double r3 = 1.0 + 8.0 * b / ((6.28 + b) * n * n);
      z -= (r.nodes[0] - z) * r1 * r2 * r3;
    } else if (i == n - 2) {
      const double r1 = (1.0 + 0.235 * b) / (0.766 + 0.119 * b);
      const double r2 = 1.0 / (1.0 + 0.639 * (n - 4.0) / (1.0 + 0.71 * (n - 4.0)));
      const double r3 = 1.0 / (1.0 + 20.0 * a / ((7.5 + a) * n * n));
      z += (z - r.nodes[n - 4]) * r1 * r2 * r3;
    } else if (i == n - 1) {
      const double r1 = (1.0 + 0.37 * b) / (1.67 + 0.28 * b);
      const double r2 = 1.0 / (1.0 + 0.22 * (n - 8.0) / n);
      const double r3 = 1.0 / (1.0 + 8.0 * a / ((6.28 + a) * n * n));
      z += (z - r.nodes[n - 3]) * r1 * r2 * r3;
    } else {
      z = 3.0 * r.nodes[i - 1] - 3.0 * r.nodes[i - 2] + r.nodes[i - 3];
    }
    for (int it = 0; it < 200; ++it) {
      double temp = 2.0 + alfbet;
      p1 = (a - b + temp * z) / 2.0;
      p2 = 1.0;
      for (int j = 2; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        temp = 2 * j + alfbet;
        const double aa = 2 * j * (j + alfbet) * (temp - 2.0);
        const double bb = (temp - 1.0) * (a * a - b * b + temp * (temp - 2.0) * z);
        const double cc = 2.0 * (j - 1 + a) * (j - 1 + b) * temp;
        p1 = (bb * p2 - cc * p3) / aa;
      }
      pp = (n * (a - b - temp * z) * p1 + 2.0 * (n + a) * (n + b) * p2) / (temp * (1.0 - z * z));
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    r.nodes[i] = z;
    const double temp = 2 * n + alfbet;
    r.weights[i] = std::exp(log_gamma(a + n) + log_gamma(b + n) - log_gamma(n + 1.0) -
                            log_gamma(n + alfbet + 1.0)) *
                   temp * std::pow(2.0, alfbet) / (pp * p2);
  }
  // ascending order
  for (int i = 0, j = n - 1; i < j; ++i, --j) {
    std::swap(r.nodes[i], r.nodes[j]);
    std::swap(r.weights[i], r.weights[j]);
  }
  return r;
}

double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int panels, int order) {
  const QuadRule q = gauss_legendre(order);
  const double h = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    const double mid = a + 0.5 * h;
    for (int i = 0; i < order; ++i) sum += q.weights[i] * f(mid + 0.5 * h * q.nodes[i]);
  }
  return 0.5 * h * sum;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::Domain, "trapezoid size mismatch");
  double s = 0.0;
  for (size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v[n - 1] = hi;
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
  for (auto& x : v) x = std::exp(x);
  v.front() = lo;
  v.back() = hi;
  return v;
}

}  // namespace freelevy
