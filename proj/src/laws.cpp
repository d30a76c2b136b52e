#include "freelevy/laws.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freelevy/error.hpp"
#include "freelevy/quadrature.hpp"
#include "freelevy/specfun.hpp"
#include "freelevy/subordination.hpp"

namespace freelevy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Treat a real point as the limit from the upper half-plane.
cplx from_above(cplx z) { return z.imag() == 0.0 ? cplx(z.real(), 0.0) : z; }

// closed forms, real points read as boundary values from above
cplx semicircle_g_above(cplx z) {
  z = from_above(z);
  return 0.5 * (z - std::sqrt(z - 2.0) * std::sqrt(z + 2.0));
}

cplx mp_g_above(cplx z) {
  z = from_above(z);
  return (z - std::sqrt(z) * std::sqrt(z - 4.0)) / (2.0 * z);
}

// z - F rationalised: no cancellation for large |z|
cplx mp_e_above(cplx z) {
  z = from_above(z);
  return 2.0 * z / (z + std::sqrt(z) * std::sqrt(z - 4.0));
}

// log x along the f1 parametrisation
double ell(double th) { return std::log(std::sin(th) / th) + th * std::cos(th) / std::sin(th); }

double q1(double th) {
  const double s = std::sin(th);
  return s * s / (kPi * th);
}

// weight q(theta) |d ell / d theta|, finite at both ends
double dh_weight(double th) { return q1(th) * std::abs(free_stable_param_dx(th)); }

constexpr int kThetaPanels = 64;
constexpr int kThetaOrder = 20;

template <class F>
cplx theta_integral(F f) {
  const QuadRule& gl = gauss_legendre(kThetaOrder);
  cplx acc{0.0, 0.0};
  const double h = kPi / kThetaPanels;
  for (int p = 0; p < kThetaPanels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int k = 0; k < kThetaOrder; ++k) {
      const double th = mid + 0.5 * h * gl.nodes[k];
      acc += 0.5 * h * gl.weights[k] * f(th);
    }
  }
  return acc;
}

// Complex integral over [a, b] with panels graded geometrically toward c.
template <class F>
cplx graded_integral(F f, double a, double b, double c) {
  const QuadRule& gl = gauss_legendre(20);
  auto panel = [&](double lo, double hi) {
    cplx acc{0.0, 0.0};
    const double mid = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) acc += h * gl.weights[k] * f(mid + h * gl.nodes[k]);
    return acc;
  };
  // signed integral from `from` to `to`, halving the remaining distance each panel
  auto toward = [&](double from, double to) {
    cplx acc{0.0, 0.0};
    double x = from, d = to - from;
    for (int k = 0; k < 60 && std::abs(d) > 1e-16 * std::max(1.0, std::abs(to)); ++k) {
      d *= 0.5;
      acc += panel(x, to - d);
      x = to - d;
    }
    return acc + panel(x, to);
  };
  c = std::clamp(c, a, b);
  cplx acc{0.0, 0.0};
  if (c > a) acc += toward(a, c);
  if (c < b) acc -= toward(b, c);
  return acc;
}

cplx cusp_cauchy(double alpha, cplx z) {
  if (z.imag() == 0.0) {
    const double y = z.real();
    if (y > 0.0 && y < 2.0) return cusp_boundary_cauchy(alpha, y);
    if (y == 0.0 || y == 2.0) throw Error(ErrorKind::Pole, "cusp law evaluated at a support endpoint");
  }
  const cplx zeta = z - 1.0;
  if (std::abs(zeta) < 0.95) {
    const cplx full = (kPi / std::sin(alpha * kPi)) * (std::pow(zeta, alpha - 1.0) - std::pow(-zeta, alpha - 1.0));
    cplx sum{0.0, 0.0}, p{1.0, 0.0};
    const cplx z2 = zeta * zeta;
    for (int k = 0; k < 2000; ++k) {
      const cplx term = p / (2.0 * k + 2.0 - alpha);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      p *= z2;
    }
    return 0.5 * alpha * (full + 2.0 * zeta * sum);
  }
  // G = int_0^1 zeta / (zeta^2 - sigma^(2/alpha)) d sigma
  const double c = std::pow(std::min(1.0, std::abs(zeta.real())), alpha);
  return graded_integral([&](double s) { return zeta / (zeta * zeta - std::pow(s, 2.0 / alpha)); }, 0.0, 1.0, c);
}

cplx free_stable_cauchy(const AdmissiblePair& p, cplx z) {
  if (z.imag() == 0.0) throw Error(ErrorKind::Boundary, "free stable Cauchy transform needs a non-real point");
  if (z.imag() < 0.0) return std::conj(free_stable_cauchy(p, std::conj(z)));
  // solve w + phi(w) = z in C+
  cplx w = z;
  for (int it = 0; it < 200; ++it) {
    const cplx ph = free_stable_voiculescu(p.alpha, p.rho, w);
    cplx dph;
    if (p.alpha == 1.0) dph = -(1.0 - 2.0 * p.rho) / w;
    else dph = -std::exp(cplx(0.0, p.alpha * p.rho * kPi)) * (1.0 - p.alpha) * std::pow(w, -p.alpha);
    cplx step = (w + ph - z) / (1.0 + dph);
    const double cap = 0.5 * std::abs(w);
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    cplx nw = w - step;
    if (nw.imag() <= 0.0) nw = cplx(nw.real(), 0.5 * w.imag());
    w = nw;
    if (std::abs(step) < 1e-15 * std::abs(w)) return 1.0 / w;
  }
  throw Error(ErrorKind::Convergence, "free stable F inversion did not converge");
}

// Complex u-function of a law with a Sigma transform: v itself.
ComplexU v_as_u(const KnownLaw& l) {
  return [l](cplx w, cplx* du) {
    if (du) *du = v_derivative_of(l, w);
    return v_function_of(l, w);
  };
}

// eta of a boxtimes-ID law at c in the closed lower half-plane: the root of w Sigma(w) = c.
cplx sigma_law_eta(const KnownLaw& l, cplx c) {
  return track_root(v_as_u(l), 1.0, c).omega;
}

cplx sigma_law_cauchy(const KnownLaw& l, cplx z) {
  if (z.imag() > 0.0) return std::conj(sigma_law_cauchy(l, std::conj(z)));
  if (z.imag() == 0.0 && z.real() >= 0.0)
    throw Error(ErrorKind::Boundary, "Cauchy transform of a law on (0, inf) at a nonnegative real point");
  // z in the closed lower half-plane: c = 1/z lies in the closed upper half; use conjugate symmetry
  const cplx c = std::conj(1.0 / z);
  const cplx eta = std::conj(sigma_law_eta(l, c));
  return 1.0 / (z * (1.0 - eta));
}

double log_domain_mellin(const std::function<double(double)>& f, double gamma, double rate) {
  const double L = 40.0 / rate;
  const int panels = std::max(32, static_cast<int>(4.0 * L));
  return integrate_gl([&](double s) { const double x = std::exp(s); return std::pow(x, gamma) * f(x) * x; }, -L, L,
                      panels, 20);
}

double mp_mellin(double gamma) {
  if (gamma <= -0.5) throw Error(ErrorKind::Divergence, "Marchenko-Pastur moment of order <= -1/2 diverges");
  const double a = 0.5, b = gamma - 0.5;
  const QuadRule r = gauss_jacobi(48, a, b);
  double s = 0.0;
  for (double w : r.weights) s += w;
  return (2.0 / kPi) * std::pow(4.0, gamma) * std::pow(2.0, -1.0 - a - b) * s;
}

double cusp_mellin(double alpha, double gamma) {
  if (gamma <= -1.0) throw Error(ErrorKind::Divergence, "moment of order <= -1 diverges at 0");
  // (1/2) int_0^1 [(1+w)^g + (1-w)^g] d sigma, w = sigma^(1/alpha)
  const QuadRule r = gauss_jacobi(64, gamma, 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    const double s = 0.5 * (1.0 + r.nodes[k]);
    const double w = std::pow(s, 1.0 / alpha);
    const double ratio = (1.0 - w) / (1.0 - s);
    // (1-w)^g = (1-s)^g * ratio^g; the (1-s)^g part lives in the weight
    const double smooth = std::pow(ratio, gamma);
    acc += r.weights[k] * std::pow(0.5, gamma) * smooth;
  }
  acc *= 0.5;  // d sigma = dx/2
  double plus = 0.5 * integrate_gl([&](double s) { return std::pow(1.0 + std::pow(s, 1.0 / alpha), gamma); }, 0.0, 1.0, 8, 20);
  return 0.5 * acc + plus;
}

}  // namespace

bool admissible(double alpha, double rho) {
  if (!(alpha > 0.0 && alpha <= 2.0) || !(rho >= 0.0 && rho <= 1.0)) return false;
  if (alpha <= 1.0) return true;
  return rho >= 1.0 - 1.0 / alpha - 1e-15 && rho <= 1.0 / alpha + 1e-15;
}

AdmissiblePair make_admissible(double alpha, double rho) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw Error(ErrorKind::Domain, "alpha must lie in (0, 2]");
  if (!(rho >= 0.0 && rho <= 1.0)) throw Error(ErrorKind::Domain, "rho must lie in [0, 1]");
  if (!admissible(alpha, rho)) {
    std::ostringstream os;
    os << "for alpha in (1, 2] rho must satisfy rho in [1-1/alpha, 1/alpha] = [" << 1.0 - 1.0 / alpha << ", "
       << 1.0 / alpha << "]";
    throw Error(ErrorKind::Domain, os.str());
  }
  return {alpha, rho};
}

std::string describe(const KnownLaw& l) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const law::ClassicalStable& x) { os << "classicalstable(" << x.p.alpha << "," << x.p.rho << ")"; },
                 [&](const law::FreeStable& x) { os << "freestable(" << x.p.alpha << "," << x.p.rho << ")"; },
                 [&](const law::BooleanStable& x) {
                   os << "booleanstable(" << x.p.alpha << "," << x.p.rho << "," << x.r << ")";
                 },
                 [&](const law::Cauchy& x) { os << "cauchy(" << x.beta << "," << x.gamma << ")"; },
                 [&](const law::Semicircle&) { os << "semicircle"; },
                 [&](const law::DykemaHaagerup& x) { os << "dh(" << x.r << ")"; },
                 [&](const law::FreeBessel& x) { os << "freebessel(" << x.r << "," << x.s << ")"; },
                 [&](const law::NuAlpha& x) { os << "nu(" << x.alpha << ")"; },
                 [&](const law::MuAlphaBeta& x) { os << "mu(" << x.alpha << "," << x.beta << ")"; },
                 [&](const law::LambdaFreeStable& x) { os << "lambda(" << x.p.alpha << "," << x.p.rho << ")"; },
                 [&](const law::MarchenkoPastur&) { os << "mp"; },
                 [&](const law::PointMass& x) { os << "point(" << x.a << ")"; },
                 [&](const law::TwoPoint& x) { os << "twopoint(" << x.a << "," << x.b << "," << x.w << ")"; },
                 [&](const law::Cusp& x) { os << "cusp(" << x.alpha << ")"; },
             },
             l);
  return os.str();
}

double boolean_stable_density(double alpha, double rho, double r, double x) {
  if (x == 0.0) throw Error(ErrorKind::Pole, "Boolean stable density is singular at 0");
  if (!(r > 0.0)) throw Error(ErrorKind::Domain, "scale r must be positive");
  const double side = x > 0.0 ? rho : 1.0 - rho;
  const double th = alpha * side * kPi;
  const double sn = std::sin(th);
  if (sn == 0.0) return 0.0;
  const double ax = std::abs(x);
  const double Y = std::pow(ax, alpha);
  double den;
  if (std::cos(th) < 0.0) {
    const double c = std::cos(0.5 * th);
    den = (Y - r) * (Y - r) + 4.0 * r * c * c * Y;
  } else {
    const double s = std::sin(0.5 * th);
    den = (Y + r) * (Y + r) - 4.0 * r * s * s * Y;
  }
  return std::max(0.0, r * sn / kPi * std::pow(ax, alpha - 1.0) / den);
}

cplx boolean_stable_F(double alpha, double rho, double r, cplx z) {
  if (z.imag() < 0.0) return std::conj(boolean_stable_F(alpha, rho, r, std::conj(z)));
  z = from_above(z);
  if (z == cplx(0.0, 0.0)) return {0.0, 0.0};
  return z + r * std::exp(cplx(0.0, alpha * rho * kPi)) * std::pow(z, 1.0 - alpha);
}

cplx free_stable_voiculescu(double alpha, double rho, cplx z) {
  if (alpha == 1.0) return cplx(0.0, -rho * kPi) - (1.0 - 2.0 * rho) * std::log(z);
  return -std::exp(cplx(0.0, alpha * rho * kPi)) * std::pow(z, 1.0 - alpha);
}

ParamPoint free_stable_density_parametric(double theta) {
  if (!(theta > 0.0 && theta < kPi)) throw Error(ErrorKind::Domain, "theta must lie in (0, pi)");
  return {ell(theta), q1(theta)};
}

double free_stable_param_dx(double th) {
  const double s = std::sin(th);
  return 2.0 * std::cos(th) / s - th / (s * s) - 1.0 / th;
}

double f1_density(double x) {
  if (x >= 1.0) return 0.0;
  double lo = 0.0, hi = kPi;  // ell decreases from 1 to -inf
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (ell(mid) > x) lo = mid;
    else hi = mid;
  }
  const double th = 0.5 * (lo + hi);
  if (th <= 0.0 || th >= kPi) return 0.0;
  return q1(th);
}

ParamPoint dh_density_parametric(double theta) {
  if (!(theta > 0.0 && theta < kPi)) throw Error(ErrorKind::Domain, "theta must lie in (0, pi)");
  const double tc = theta * std::cos(theta) / std::sin(theta);
  return {std::sin(theta) / theta * std::exp(tc), std::sin(theta) / kPi * std::exp(-tc)};
}

double dh_moment(double r, double n) {
  if (r < 0.0 || n < 0.0) throw Error(ErrorKind::Domain, "dh_moment needs r >= 0 and n >= 0");
  const double rn = r * n;
  const double lead = n == 0.0 ? 0.0 : rn * std::log(n);
  return std::exp(lead - log_gamma(2.0 + rn));
}

// theta at which the f1 parametrisation reaches -depth; the left tail beyond carries mass ~ 1/depth
static double theta_cut(double depth) {
  double lo = 0.0, hi = kPi;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    if (ell(m) > -depth) lo = m;
    else hi = m;
  }
  return lo;
}

GridDensity f1_grid(int n) {
  std::vector<double> x(n), v(n);
  const double top = theta_cut(100.0);
  for (int k = 0; k < n; ++k) {
    const double th = top * (k + 0.5) / n;
    const ParamPoint p = free_stable_density_parametric(th);
    x[n - 1 - k] = p.x;
    v[n - 1 - k] = p.density;
  }
  return make_grid_density(std::move(x), std::move(v));
}

GridDensity dh_grid(double r, int n) {
  if (!(r > 0.0)) throw Error(ErrorKind::Domain, "DH grid needs r > 0");
  std::vector<double> x(n), v(n);
  const double scale = std::pow(r, -r);
  const double top = theta_cut(50.0);
  for (int k = 0; k < n; ++k) {
    const double th = top * (k + 0.5) / n;
    const ParamPoint p = dh_density_parametric(th);
    const double X = scale * std::pow(p.x, r);
    x[n - 1 - k] = X;
    v[n - 1 - k] = p.density * p.x / (r * X);
  }
  return make_grid_density(std::move(x), std::move(v));
}

bool is_boxtimes_id(const KnownLaw& l) {
  return std::visit(overloaded{
                        [](const law::FreeBessel& x) { return x.s == 1.0 || (x.r >= 1.0 && x.s > 1.0); },
                        [](const law::MarchenkoPastur&) { return true; },
                        [](const law::PointMass& x) { return x.a > 0.0; },
                        [](const law::BooleanStable& x) { return x.p.rho == 1.0 && x.p.alpha < 1.0 && x.r == 1.0; },
                        [](const law::NuAlpha&) { return true; },
                        [](const law::MuAlphaBeta&) { return true; },
                        [](const auto&) { return false; },
                    },
                    l);
}

static void require_id(const KnownLaw& l) {
  if (!is_boxtimes_id(l))
    throw Error(ErrorKind::NotInfinitelyDivisible, describe(l) + " has no Sigma transform of the required form");
}

cplx v_function_of(const KnownLaw& l, cplx z) {
  require_id(l);
  return std::visit(overloaded{
                        [&](const law::FreeBessel& x) { return x.r * std::log(1.0 - z) - std::log((1.0 - x.s) * z + x.s); },
                        [&](const law::MarchenkoPastur&) { return std::log(1.0 - z); },
                        [&](const law::PointMass& x) { return cplx(-std::log(x.a), 0.0); },
                        [&](const law::BooleanStable& x) {
                          return (1.0 - x.p.alpha) / x.p.alpha * std::log(-from_above(z));
                        },
                        [&](const law::NuAlpha& x) { return std::pow(z / (z - 1.0), x.alpha - 1.0); },
                        [&](const law::MuAlphaBeta& x) {
                          return x.alpha * std::log(-from_above(z)) + (x.beta - x.alpha) * std::log(1.0 - z);
                        },
                        [&](const auto&) -> cplx { return {}; },
                    },
                    l);
}

cplx v_derivative_of(const KnownLaw& l, cplx z) {
  require_id(l);
  return std::visit(overloaded{
                        [&](const law::FreeBessel& x) { return -x.r / (1.0 - z) - (1.0 - x.s) / ((1.0 - x.s) * z + x.s); },
                        [&](const law::MarchenkoPastur&) { return -1.0 / (1.0 - z); },
                        [&](const law::PointMass&) { return cplx(0.0, 0.0); },
                        [&](const law::BooleanStable& x) { return (1.0 - x.p.alpha) / x.p.alpha / z; },
                        [&](const law::NuAlpha& x) {
                          const cplx q = z / (z - 1.0);
                          return (x.alpha - 1.0) * std::pow(q, x.alpha - 2.0) * (-1.0 / ((z - 1.0) * (z - 1.0)));
                        },
                        [&](const law::MuAlphaBeta& x) { return x.alpha / z - (x.beta - x.alpha) / (1.0 - z); },
                        [&](const auto&) -> cplx { return {}; },
                    },
                    l);
}

double sigma_transform_of(const KnownLaw& l, double z) {
  if (!(z < 0.0)) throw Error(ErrorKind::Domain, "Sigma transform is evaluated on (-inf, 0)");
  return std::exp(v_function_of(l, cplx(z, 0.0)).real());
}

double s_transform(const MeasureRep& mu, double z) {
  if (!(z > -1.0 && z < 0.0)) throw Error(ErrorKind::Domain, "S transform is evaluated on (-1, 0)");
  return sigma_transform(mu, z / (1.0 + z));
}

double sigma_transform(const MeasureRep& mu, double w) {
  if (!(w < 0.0) || !std::isfinite(w)) throw Error(ErrorKind::Domain, "Sigma transform is evaluated on (-inf, 0)");
  if (const auto* l = std::get_if<KnownLaw>(&mu); l && is_boxtimes_id(*l)) return sigma_transform_of(*l, w);
  // numeric: eta(x) = w for x < 0, Sigma(w) = x / w
  auto eta = [&](double x) { return eta_transform(mu, cplx(x, 0.0)).real(); };
  double lo = w, hi = w;
  for (int k = 0; eta(lo) > w; ++k) {
    lo *= 2.0;
    if (k > 3000) throw Error(ErrorKind::Construction, "eta does not reach the requested level");
  }
  for (int k = 0; eta(hi) < w; ++k) {
    hi *= 0.5;
    if (k > 3000) throw Error(ErrorKind::Construction, "eta does not reach the requested level");
  }
  // work in log(-x); eta is increasing in x
  double a = std::log(-hi), b = std::log(-lo);
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
    const double m = 0.5 * (a + b);
    if (eta(-std::exp(m)) < w) b = m;
    else a = m;
  }
  return -std::exp(0.5 * (a + b)) / w;
}

double s_transform_inverse_law(const MeasureRep& mu, double z) {
  if (!(z > -1.0 && z < 0.0)) throw Error(ErrorKind::Domain, "S transform is evaluated on (-1, 0)");
  return 1.0 / s_transform(mu, -1.0 - z);
}

double boolean_stable_boxtimes_alpha(double alpha, double t) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::Domain, "alpha must lie in (0, 1)");
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "t must be positive");
  return alpha / (alpha + (1.0 - alpha) * t);
}

KnownLaw boolean_stable_boxtimes_power(double alpha, double t) {
  return law::BooleanStable{{boolean_stable_boxtimes_alpha(alpha, t), 1.0}, 1.0};
}

cplx classical_stable_cf(double alpha, double rho, cplx z) {
  if (alpha == 1.0) return std::exp(cplx(0.0, -rho * kPi) * z + (1.0 - 2.0 * rho) * z * std::log(z));
  return std::exp(-std::exp(cplx(0.0, alpha * rho * kPi)) * std::pow(z, alpha) / gamma_fn(1.0 + alpha));
}

double log_cauchy_density(double beta, double gamma, double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::Domain, "log-Cauchy density lives on (0, inf)");
  if (!(gamma > 0.0)) throw Error(ErrorKind::Domain, "log-Cauchy scale must be positive");
  const double l = std::log(x) - beta;
  return gamma / (kPi * x * (l * l + gamma * gamma));
}

double log_boolean_stable_density(double alpha, double rho, double r, double x) {
  if (!(x > 0.0) || x == 1.0) throw Error(ErrorKind::Domain, "log Boolean stable density needs x > 0, x != 1");
  return boolean_stable_density(alpha, rho, r, std::log(x)) / x;
}

cplx lambda_voiculescu(double alpha, double rho, cplx z) { return free_stable_voiculescu(alpha, rho, std::tan(z)); }

cplx cusp_boundary_cauchy(double alpha, double y) {
  const double v = y - 1.0;
  if (v == 0.0) throw Error(ErrorKind::Pole, "cusp law is singular at 1");
  if (!(std::abs(v) < 1.0)) throw Error(ErrorKind::Domain, "real point outside the cusp support");
  const double av = std::abs(v);
  const double pw = std::pow(av, alpha - 1.0);
  double sum = 0.0, p = 1.0;
  for (int k = 0; k < 100000; ++k) {
    const double term = p / (2.0 * k + 2.0 - alpha);
    sum += term;
    if (term < 1e-17 * sum) break;
    p *= v * v;
  }
  const double re = 0.5 * alpha * (kPi * (v > 0 ? 1.0 : -1.0) * pw / std::tan(0.5 * alpha * kPi) + 2.0 * v * sum);
  return {re, -kPi * 0.5 * alpha * pw};
}

std::optional<double> density_of(const KnownLaw& l, double x) {
  return std::visit(overloaded{
                        [&](const law::BooleanStable& b) -> std::optional<double> {
                          if (x == 0.0) return std::nullopt;
                          return boolean_stable_density(b.p.alpha, b.p.rho, b.r, x);
                        },
                        [&](const law::Cauchy& c) -> std::optional<double> {
                          if (c.gamma == 0.0) return std::nullopt;
                          return c.gamma / (kPi * ((x - c.beta) * (x - c.beta) + c.gamma * c.gamma));
                        },
                        [&](const law::Semicircle&) -> std::optional<double> {
                          return std::abs(x) < 2.0 ? std::sqrt(4.0 - x * x) / (2.0 * kPi) : 0.0;
                        },
                        [&](const law::MarchenkoPastur&) -> std::optional<double> {
                          return x > 0.0 && x < 4.0 ? std::sqrt((4.0 - x) / x) / (2.0 * kPi) : 0.0;
                        },
                        [&](const law::FreeBessel& b) -> std::optional<double> {
                          if (b.r == 1.0 && b.s == 1.0) return x > 0.0 && x < 4.0 ? std::sqrt((4.0 - x) / x) / (2.0 * kPi) : 0.0;
                          return std::nullopt;
                        },
                        [&](const law::Cusp& c) -> std::optional<double> {
                          if (x <= 0.0 || x >= 2.0) return 0.0;
                          if (x == 1.0) return std::nullopt;
                          return 0.5 * c.alpha * std::pow(std::abs(x - 1.0), c.alpha - 1.0);
                        },
                        [&](const law::FreeStable& f) -> std::optional<double> {
                          if (f.p.alpha == 2.0) return std::abs(x) < 2.0 ? std::sqrt(4.0 - x * x) / (2.0 * kPi) : 0.0;
                          if (f.p.alpha == 1.0 && f.p.rho == 0.5) return 0.5 / ((x * x + 0.25 * kPi * kPi));
                          if (f.p.alpha == 1.0 && f.p.rho == 0.0) return f1_density(x);
                          return std::nullopt;
                        },
                        [&](const law::DykemaHaagerup& d) -> std::optional<double> {
                          if (!(d.r > 0.0)) return std::nullopt;
                          if (!(x > 0.0)) return 0.0;
                          // DH_r is the image of DH_1 under y -> r^-r y^r, and DH_1 = e^{F_1}
                          const double y = std::pow(x * std::pow(d.r, d.r), 1.0 / d.r);
                          const double p1 = f1_density(std::log(y)) / y;
                          return p1 * y / (d.r * x);
                        },
                        [&](const auto&) -> std::optional<double> { return std::nullopt; },
                    },
                    l);
}

cplx known_cauchy(const KnownLaw& l, cplx z) {
  return std::visit(
      overloaded{
          [&](const law::ClassicalStable&) -> cplx {
            throw Error(ErrorKind::Domain, "classical stable laws are handled through their characteristic function only");
          },
          [&](const law::LambdaFreeStable&) -> cplx {
            throw Error(ErrorKind::Domain, "this law is represented only through its Voiculescu transform");
          },
          [&](const law::FreeStable& f) -> cplx {
            if (f.p.alpha == 2.0 && f.p.rho == 0.5) return known_cauchy(law::Semicircle{}, z);
            return free_stable_cauchy(f.p, z);
          },
          [&](const law::BooleanStable& b) -> cplx {
            const cplx F = boolean_stable_F(b.p.alpha, b.p.rho, b.r, z);
            if (std::abs(F) < 1e-300) throw Error(ErrorKind::Pole, "F vanishes");
            return 1.0 / F;
          },
          [&](const law::Cauchy& c) -> cplx {
            if (z.imag() < 0.0) return 1.0 / (z - c.beta - cplx(0.0, c.gamma));
            return 1.0 / (z - c.beta + cplx(0.0, c.gamma));
          },
          [&](const law::Semicircle&) -> cplx {
            if (z.imag() == 0.0 && std::abs(z.real()) <= 2.0)
              throw Error(ErrorKind::Boundary, "real point inside the semicircle support; use boundary_F");
            return semicircle_g_above(z);
          },
          [&](const law::MarchenkoPastur&) -> cplx {
            if (z.imag() == 0.0 && z.real() > 0.0 && z.real() <= 4.0)
              throw Error(ErrorKind::Boundary, "real point inside the Marchenko-Pastur support; use boundary_F");
            if (z == cplx(0.0, 0.0)) throw Error(ErrorKind::Pole, "Marchenko-Pastur Cauchy transform at 0");
            return mp_g_above(z);
          },
          [&](const law::DykemaHaagerup& d) -> cplx {
            if (d.r == 0.0) return 1.0 / (z - 1.0);
            const double scale = std::pow(d.r, -d.r);
            const double top = scale * std::exp(d.r);
            if (z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= top)
              throw Error(ErrorKind::Boundary, "real point inside the DH support");
            return theta_integral([&](double th) { return dh_weight(th) / (z - scale * std::exp(d.r * ell(th))); });
          },
          [&](const law::PointMass& p) -> cplx {
            if (z == cplx(p.a, 0.0)) throw Error(ErrorKind::Pole, "evaluation at the atom");
            return 1.0 / (z - p.a);
          },
          [&](const law::TwoPoint& t) -> cplx {
            if (z == cplx(t.a, 0.0) || z == cplx(t.b, 0.0)) throw Error(ErrorKind::Pole, "evaluation at an atom");
            return t.w / (z - t.a) + (1.0 - t.w) / (z - t.b);
          },
          [&](const law::Cusp& c) -> cplx { return cusp_cauchy(c.alpha, z); },
          [&](const auto&) -> cplx { return sigma_law_cauchy(l, z); },
      },
      l);
}

cplx known_e_transform(const KnownLaw& l, cplx z) {
  return std::visit(overloaded{
                        [&](const law::PointMass& p) -> cplx { return {p.a, 0.0}; },
                        [&](const law::TwoPoint& t) -> cplx {
                          if (std::abs(z) > 1e200) return {t.w * t.a + (1.0 - t.w) * t.b, 0.0};
                          const cplx ga = t.w / (z - t.a), gb = (1.0 - t.w) / (z - t.b);
                          return (ga * t.a + gb * t.b) / (ga + gb);
                        },
                        [&](const law::Cauchy& c) -> cplx {
                          return z.imag() < 0.0 ? cplx(c.beta, c.gamma) : cplx(c.beta, -c.gamma);
                        },
                        [&](const law::MarchenkoPastur&) -> cplx {
                          if (std::abs(z) > 1e200) return {1.0, 0.0};
                          if (z.imag() == 0.0 && z.real() > 0.0 && z.real() <= 4.0)
                            throw Error(ErrorKind::Boundary, "real point inside the Marchenko-Pastur support; use boundary_F");
                          if (z.imag() < 0.0) return std::conj(known_e_transform(l, std::conj(z)));
                          return mp_e_above(z);
                        },
                        [&](const law::BooleanStable& b) -> cplx {
                          if (z.imag() < 0.0) return std::conj(known_e_transform(l, std::conj(z)));
                          z = from_above(z);
                          return -b.r * std::exp(cplx(0.0, b.p.alpha * b.p.rho * kPi)) * std::pow(z, 1.0 - b.p.alpha);
                        },
                        [&](const auto&) -> cplx {
                          const cplx g = known_cauchy(l, z);
                          if (std::abs(g) < 1e-300) throw Error(ErrorKind::Division, "Cauchy transform vanishes numerically");
                          return z - 1.0 / g;
                        },
                    },
                    l);
}

cplx known_boundary_e(const KnownLaw& l, double y) {
  const cplx z(y, 0.0);
  return std::visit(overloaded{
                        [&](const law::Semicircle&) -> cplx {
                          const cplx g = semicircle_g_above(z);
                          if (std::abs(g) < 1e-300) throw Error(ErrorKind::Division, "Cauchy transform vanishes numerically");
                          return z - 1.0 / g;
                        },
                        [&](const law::MarchenkoPastur&) -> cplx {
                          if (y == 0.0) throw Error(ErrorKind::Pole, "Marchenko-Pastur boundary value at 0");
                          return mp_e_above(z);
                        },
                        [&](const auto&) -> cplx { return known_e_transform(l, z); },
                    },
                    l);
}

double known_mellin(const KnownLaw& l, double gamma) {
  return std::visit(
      overloaded{
          [&](const law::PointMass& p) -> double {
            if (p.a <= 0.0) throw Error(ErrorKind::Domain, "Mellin moment needs a positive atom");
            return std::pow(p.a, gamma);
          },
          [&](const law::TwoPoint& t) -> double {
            if (t.a <= 0.0 || t.b <= 0.0) throw Error(ErrorKind::Domain, "Mellin moment needs positive atoms");
            return t.w * std::pow(t.a, gamma) + (1.0 - t.w) * std::pow(t.b, gamma);
          },
          [&](const law::MarchenkoPastur&) -> double { return mp_mellin(gamma); },
          [&](const law::FreeBessel& b) -> double {
            if (b.r == 1.0 && b.s == 1.0) return mp_mellin(gamma);
            throw Error(ErrorKind::Domain, "use the S-transform route for this law");
          },
          [&](const law::DykemaHaagerup& d) -> double {
            if (gamma < 0.0) throw Error(ErrorKind::Divergence, "negative moments of DH diverge");
            if (d.r == 0.0) return 1.0;
            const double g = d.r * gamma;
            return std::pow(d.r, -d.r * gamma) * theta_integral([&](double th) { return cplx(std::exp(g * ell(th)) * dh_weight(th), 0.0); }).real();
          },
          [&](const law::BooleanStable& b) -> double {
            if (b.p.rho != 1.0 || b.p.alpha >= 1.0) throw Error(ErrorKind::Domain, "Mellin moment needs a law on (0, inf)");
            if (!(std::abs(gamma) < b.p.alpha)) throw Error(ErrorKind::Divergence, "moment order outside (-alpha, alpha)");
            const double rate = b.p.alpha - std::abs(gamma);
            return log_domain_mellin([&](double x) { return boolean_stable_density(b.p.alpha, 1.0, b.r, x); }, gamma, rate);
          },
          [&](const law::Cusp& c) -> double { return cusp_mellin(c.alpha, gamma); },
          [&](const auto&) -> double {
            throw Error(ErrorKind::Domain, describe(l) + ": no direct Mellin moment available");
          },
      },
      l);
}

double known_mass(const KnownLaw&) { return 1.0; }

}  // namespace freelevy
