#include "freelevy/subordination.hpp"

#include <cmath>

#include "freelevy/error.hpp"

namespace freelevy {

double invert_phi_real(const RealU& u, double t, double x) {
  if (!(x < 0.0) || !std::isfinite(x)) throw Error(ErrorKind::Domain, "real inversion needs x < 0");
  if (t == 0.0) return x;
  const double target = std::log(-x);
  // in s = log(-w) the map s + t u(-e^s) is strictly increasing
  auto g = [&](double s) { return s + t * u(-std::exp(s)) - target; };
  double lo = target, hi = target;
  const double g0 = g(target);
  if (g0 == 0.0) return x;
  const double max_span = 1000.0 * std::log(10.0);
  double step = 1.0;
  if (g0 > 0.0) {
    for (;;) {
      lo = target - step;
      const double v = g(lo);
      if (v <= 0.0) break;
      hi = lo;
      step *= 2.0;
      if (step > max_span) throw Error(ErrorKind::Inversion, "bracket expansion exceeded 1000 decades");
    }
  } else {
    for (;;) {
      hi = target + step;
      const double v = g(hi);
      if (v >= 0.0) break;
      lo = hi;
      step *= 2.0;
      if (step > max_span) throw Error(ErrorKind::Inversion, "bracket expansion exceeded 1000 decades");
    }
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) hi = mid;
    else lo = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double h = 1e-7 * std::max(1.0, std::abs(s));
    const double gs = g(s);
    const double d = (g(s + h) - g(s - h)) / (2.0 * h);
    if (!(d > 0.0)) break;
    const double next = s - gs / d;
    if (next < lo || next > hi || !(std::abs(g(next)) <= std::abs(gs))) break;
    s = next;
  }
  return -std::exp(s);
}

RootTrack track_root(const ComplexU& u, double t, cplx c) {
  if (c == cplx(0.0, 0.0) || !finite(c)) throw Error(ErrorKind::Domain, "root tracking needs a finite nonzero target");
  if (c.imag() > 0.0) throw Error(ErrorKind::Domain, "root tracking target must lie in the closed lower half-plane");
  const double lc = std::log(std::abs(c));
  double target_arg = std::atan2(c.imag() < 0.0 ? c.imag() : -0.0, c.real());
  if (c.imag() == 0.0 && c.real() > 0.0) target_arg = 0.0;

  RootTrack out;
  RealU ur = [&](double x) { return u(cplx(x, 0.0), nullptr).real(); };
  cplx w = invert_phi_real(ur, t, -std::abs(c));
  if (t == 0.0) {
    out.omega = c;
    return out;
  }

  auto residual = [&](cplx om, double theta, cplx* dh) {
    cplx du;
    const cplx uv = u(om, &du);
    if (dh) *dh = 1.0 / om + t * du;
    return log_omega(om) + t * uv - cplx(lc, theta);
  };

  const double span = target_arg + kPi;
  const int nsteps = std::max(1, static_cast<int>(std::ceil(span / 0.1)));
  // k = 0 polishes the start, which is only approximate when u is not real on the axis
  for (int k = 0; k <= nsteps; ++k) {
    const double th_prev = -kPi + span * std::max(k - 1, 0) / nsteps;
    const double th = -kPi + span * k / nsteps;
    cplx dh;
    residual(w, th_prev, &dh);
    if (k > 0) w += cplx(0.0, th - th_prev) / dh;
    bool ok = false;
    for (int it = 0; it < 50; ++it) {
      const cplx h = residual(w, th, &dh);
      ++out.newton_iterations;
      cplx step = h / dh;
      if (!finite(step)) break;
      const double cap = 0.5 * std::abs(w);
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      w -= step;
      // Newton is quadratic here, so a 1e-13 relative step leaves a root accurate to rounding
      if (std::abs(step) <= 1e-13 * std::abs(w) || std::abs(h) < 1e-15) {
        ok = true;
        break;
      }
    }
    if (!ok || !finite(w)) throw Error(ErrorKind::Continuation, "Newton did not converge within 50 iterations on the continuation path");
    if (k > 0) ++out.steps;
  }
  out.omega = w;
  return out;
}

}  // namespace freelevy
