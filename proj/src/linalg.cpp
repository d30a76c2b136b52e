#include "freelevy/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "freelevy/error.hpp"

namespace freelevy {

Tridiagonal hermitian_tridiagonalize(CMatrix h) {
  const int n = h.n;
  Tridiagonal out;
  out.diag.resize(n);
  out.off.assign(n > 0 ? n - 1 : 0, 0.0);
  std::vector<cplx> v(n), p(n);
  for (int k = 0; k + 2 < n; ++k) {
    // column below the diagonal
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += std::abs(h(i, k).real()) + std::abs(h(i, k).imag());
    if (scale == 0.0) {
      out.off[k] = 0.0;
      continue;
    }
    double norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = h(i, k) / scale;
      norm2 += std::norm(v[i]);
    }
    const double xnorm = std::sqrt(norm2);
    const cplx x0 = v[k + 1];
    const double ax0 = std::abs(x0);
    const cplx phase = ax0 == 0.0 ? cplx(1.0, 0.0) : x0 / ax0;
    // v = x + phase |x| e1 keeps the first entry away from cancellation
    v[k + 1] = x0 + phase * xnorm;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    const double vn = std::sqrt(vnorm2);
    for (int i = k + 1; i < n; ++i) v[i] /= vn;
    out.off[k] = xnorm * scale;  // modulus of the new subdiagonal entry

    // p = A v on the trailing block, K = v^* p
    cplx kk(0.0, 0.0);
    for (int i = k + 1; i < n; ++i) {
      cplx s(0.0, 0.0);
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      p[i] = s;
    }
    for (int i = k + 1; i < n; ++i) kk += std::conj(v[i]) * p[i];
    const double kr = kk.real();
    for (int i = k + 1; i < n; ++i) p[i] -= kr * v[i];
    // A <- A - 2 (v w^* + w v^*)
    for (int i = k + 1; i < n; ++i) {
      const cplx vi = 2.0 * v[i], wi = 2.0 * p[i];
      for (int j = k + 1; j < n; ++j) h(i, j) -= vi * std::conj(p[j]) + wi * std::conj(v[j]);
    }
  }
  for (int k = 0; k < n; ++k) out.diag[k] = h(k, k).real();
  if (n >= 2) out.off[n - 2] = std::abs(h(n - 1, n - 2));
  return out;
}

std::vector<double> tridiagonal_eigenvalues(Tridiagonal t) {
  auto& d = t.diag;
  const int n = static_cast<int>(d.size());
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = t.off[i];
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw Error(ErrorKind::Numeric, "QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            // underflow: deflate and restart
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  return tridiagonal_eigenvalues(hermitian_tridiagonalize(h));
}

CMatrix gram(const CMatrix& t) {
  const int n = t.n;
  CMatrix g(n);
  // lower triangle and diagonal; mirror afterwards
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      cplx s(0.0, 0.0);
      for (int k = 0; k < n; ++k) s += std::conj(t(k, i)) * t(k, j);
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  return g;
}

}  // namespace freelevy
