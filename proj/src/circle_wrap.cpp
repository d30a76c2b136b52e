#include "freelevy/circle_wrap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freelevy/error.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/quadrature.hpp"
#include "freelevy/specfun.hpp"

namespace freelevy {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void add_atoms(std::vector<cplx>& m, const AtomicMeasure& a) {
  for (size_t i = 0; i < a.loc.size(); ++i) {
    const cplx step = std::polar(1.0, -a.loc[i]);
    cplx p{a.weight[i], 0.0};
    for (auto& v : m) {
      v += p;
      p *= step;
    }
  }
}

// (e^z - 1)/z and (e^z (z - 1) + 1)/z^2 without cancellation near 0
cplx phi1(cplx z) {
  if (std::abs(z) > 0.1) return (std::exp(z) - 1.0) / z;
  cplx term{1.0, 0.0}, sum{1.0, 0.0};
  for (int k = 1; k < 14; ++k) {
    term *= z / (k + 1.0);
    sum += term;
  }
  return sum;
}

cplx phi2(cplx z) {
  if (std::abs(z) > 0.1) return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
  // sum z^k / (k! (k + 2))
  cplx p{1.0, 0.0}, sum{0.5, 0.0};
  for (int k = 1; k < 14; ++k) {
    p *= z / double(k);
    sum += p / (k + 2.0);
  }
  return sum;
}

// exact Fourier coefficients of the piecewise-linear interpolant
void add_grid(std::vector<cplx>& m, const GridDensity& g) {
  const auto& x = g.grid;
  const auto& f = g.values;
  for (size_t n = 0; n < m.size(); ++n) {
    const cplx k(0.0, -double(n));
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i + 1 < x.size(); ++i) {
      const double h = x[i + 1] - x[i];
      const double slope = (f[i + 1] - f[i]) / h;
      const cplx kh = k * h;
      acc += std::exp(k * x[i]) * (f[i] * h * phi1(kh) + slope * h * h * phi2(kh));
    }
    m[n] += acc;
  }
}

}  // namespace

CircleMeasure wrap(const MeasureRep& mu, int n_terms) {
  if (n_terms < 1) throw Error(ErrorKind::Domain, "wrap needs at least one moment");
  CircleMeasure out;
  out.moments.assign(n_terms + 1, cplx(0.0, 0.0));
  auto& m = out.moments;
  if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
    add_atoms(m, *a);
    return out;
  }
  if (const auto* g = std::get_if<GridDensity>(&mu)) {
    add_grid(m, *g);
    return out;
  }
  if (const auto* mx = std::get_if<Mixed>(&mu)) {
    add_atoms(m, mx->atoms);
    add_grid(m, mx->density);
    return out;
  }
  const KnownLaw& l = std::get<KnownLaw>(mu);
  if (const auto* c = std::get_if<law::Cauchy>(&l)) {
    for (int n = 0; n <= n_terms; ++n) m[n] = std::exp(cplx(-n * c->gamma, -n * c->beta));
    return out;
  }
  if (const auto* p = std::get_if<law::PointMass>(&l)) {
    add_atoms(m, AtomicMeasure{{p->a}, {1.0}});
    return out;
  }
  if (const auto* t = std::get_if<law::TwoPoint>(&l)) {
    add_atoms(m, AtomicMeasure{{t->a, t->b}, {t->w, 1.0 - t->w}});
    return out;
  }
  if (std::holds_alternative<law::Semicircle>(l)) {
    m[0] = 1.0;
    for (int n = 1; n <= n_terms; ++n) m[n] = bessel_j1(2.0 * n) / n;
    return out;
  }
  // generic: sum 2 pi translates of the density on [-pi, pi)
  if (!density_of(l, 0.0) && !density_of(l, 1.0)) throw Error(ErrorKind::Domain, "wrap needs an evaluable density or atoms");
  const int npts = 2048;
  std::vector<double> th(npts + 1), w(npts + 1, 0.0);
  for (int i = 0; i <= npts; ++i) th[i] = -kPi + kTwoPi * i / npts;
  auto dens = [&](double x) { return density_of(l, x).value_or(0.0); };
  // returns whether the translate put any mass on the grid
  auto add_shift = [&](int k) {
    bool hit = false;
    for (int i = 0; i <= npts; ++i) {
      const double v = dens(th[i] + kTwoPi * k);
      hit = hit || v != 0.0;
      w[i] += v;
    }
    return hit;
  };
  add_shift(0);
  int k = 0;
  double mass = 0.0;
  for (;;) {
    // periodic trapezoid
    mass = 0.0;
    for (int i = 0; i < npts; ++i) mass += w[i];
    mass *= kTwoPi / npts;
    if (std::abs(1.0 - mass) < 1e-10) break;
    if (++k > 200) throw Error(ErrorKind::Truncation, "wrapped tail mass above 1e-10 after 200 translates");
    const bool right = add_shift(k), left = add_shift(-k);
    // support used up: what is missing is quadrature error, not tail
    if (!right && !left)
      throw Error(ErrorKind::Truncation, "density too singular for the periodic grid, mass off by " + std::to_string(1.0 - mass));
  }
  out.translates = k;
  for (int n = 0; n <= n_terms; ++n) {
    cplx s{0.0, 0.0};
    for (int i = 0; i < npts; ++i) s += w[i] * std::polar(1.0, -n * th[i]);
    m[n] = s * (kTwoPi / npts);
  }
  out.wrapped = make_grid_density(th, w);
  return out;
}

cplx circle_eta(const CircleMeasure& m, cplx z, double tol) {
  const double r = std::abs(z);
  if (!(r < 1.0)) throw Error(ErrorKind::Domain, "circle eta needs |z| < 1");
  const int N = static_cast<int>(m.moments.size()) - 1;
  if (N < 1) throw Error(ErrorKind::Truncation, "no moments available");
  const double tail = std::pow(r, N + 1) / (1.0 - r);
  if (tail > tol) throw Error(ErrorKind::Truncation, "not enough moments for the requested accuracy at this radius");
  cplx psi{0.0, 0.0};
  for (int n = N; n >= 1; --n) psi = (psi + m.moments[n]) * z;
  return psi / (1.0 + psi);
}

double wrap_homomorphism_check(const MeasureRep& mu, const std::vector<cplx>& samples, int n_terms) {
  for (const cplx& z : samples) {
    if (!(z.imag() > 0.0)) throw Error(ErrorKind::Domain, "samples must lie in the upper half-plane");
    const cplx f0 = f_transform(mu, z), f1 = f_transform(mu, z + kTwoPi);
    if (std::abs(f1 - f0 - kTwoPi) > 1e-8 * (1.0 + std::abs(f0)))
      throw Error(ErrorKind::Class, "F is not 2 pi-equivariant");
  }
  const CircleMeasure w = wrap(mu, n_terms);
  double worst = 0.0;
  for (const cplx& z : samples) {
    const cplx lhs = std::exp(cplx(0.0, 1.0) * f_transform(mu, z));
    const cplx rhs = circle_eta(w, std::exp(cplx(0.0, 1.0) * z));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace {

// sum over n of (x + 2 pi n)^-2, |n| <= terms, plus the midpoint integral of the rest
double lattice_inverse_square(double x, int terms) {
  double s = 0.0;
  for (int n = terms; n >= 1; --n) {
    const double a = x + kTwoPi * n, b = x - kTwoPi * n;
    s += 1.0 / (a * a) + 1.0 / (b * b);
  }
  s += 1.0 / (x * x);
  const double edge = kTwoPi * (terms + 0.5);
  s += 1.0 / (kTwoPi * (edge + x)) + 1.0 / (kTwoPi * (edge - x));
  return s;
}

// sum over n of 2 (sin y - y/(1+y^2)) / y^2, y = x + 2 pi n != 0, with the 1/y^2 tail closed by an integral
double lattice_drift_kernel(double x, int terms) {
  double s = 0.0;
  auto one = [](double y) { return 2.0 * (std::sin(y) - y / (1.0 + y * y)) / (y * y); };
  for (int n = terms; n >= 1; --n) s += one(x + kTwoPi * n) + one(x - kTwoPi * n);
  if (x != 0.0) s += one(x);
  const double edge = kTwoPi * (terms + 0.5);
  s += 2.0 * std::sin(x) * (1.0 / (kTwoPi * (edge + x)) + 1.0 / (kTwoPi * (edge - x)));
  return s;
}

// the same lattice sum in closed form: Re cot((x - i)/2)
double drift_kernel_closed(double x) {
  const cplx w(0.5 * x, -0.5);
  return (std::cos(w) / std::sin(w)).real();
}

double wrap_angle(double x) {
  double th = std::fmod(x, kTwoPi);
  if (th < 0.0) th += kTwoPi;
  if (th >= kTwoPi) th = 0.0;
  return th;
}

// (1 + x^2) / x^2 (h(x) in the drift integrand uses the same factor)
double levy_weight(double x) { return (1.0 + x * x) / (x * x); }

double drift_integrand(double x) {
  if (x == 0.0) return 0.0;
  return (std::sin(x) - x / (1.0 + x * x)) * levy_weight(x);
}

}  // namespace

SeriesIdentity series_identity_check(double x, int terms) {
  if (std::fmod(x, kTwoPi) == 0.0) throw Error(ErrorKind::Pole, "x must avoid 2 pi Z");
  return {lattice_inverse_square(x, terms), 1.0 / (2.0 * (1.0 - std::cos(x)))};
}

double AdditivePair::tau_density(double x) const {
  double v = density.grid.empty() ? 0.0 : interpolate(density, x);
  if (periodic && !periodic->density.grid.empty()) v += 2.0 / (1.0 + x * x) * interpolate(periodic->density, wrap_angle(x));
  return v;
}

WrappedPair additive_to_mult_pair(const AdditivePair& p, int translates) {
  WrappedPair out;
  double drift = 0.0;
  std::vector<std::pair<double, double>> atoms;  // theta, weight
  // finite atoms
  for (size_t i = 0; i < p.atoms.loc.size(); ++i) {
    const double x = p.atoms.loc[i], w = p.atoms.weight[i];
    if (x == 0.0) {
      atoms.emplace_back(0.0, 0.5 * w);
      continue;
    }
    drift += w * drift_integrand(x);
    const double th = wrap_angle(x);
    const double f = (1.0 - std::cos(th)) * levy_weight(x) * w;
    if (f != 0.0) atoms.emplace_back(th, f);
  }
  // finite density: compact support, translates folded onto [0, 2 pi)
  std::vector<double> grid, vals;
  const bool have_periodic_grid = p.periodic && !p.periodic->density.grid.empty();
  if (have_periodic_grid) grid = p.periodic->density.grid;
  else if (!p.density.grid.empty()) grid = linspace(0.0, kTwoPi, 1025);
  vals.assign(grid.size(), 0.0);
  if (!p.density.grid.empty()) {
    const auto& g = p.density;
    std::vector<double> h(g.grid.size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = drift_integrand(g.grid[i]) * g.values[i];
    drift += trapezoid(g.grid, h);
    const int kmin = static_cast<int>(std::floor(g.grid.front() / kTwoPi));
    const int kmax = static_cast<int>(std::floor(g.grid.back() / kTwoPi));
    if (kmax - kmin > 400) throw Error(ErrorKind::Truncation, "density support spans more than 200 translates each side");
    for (size_t i = 0; i < grid.size(); ++i) {
      const double th = grid[i];
      double s = 0.0;
      for (int k = kmin; k <= kmax; ++k) {
        const double x = th + kTwoPi * k;
        const double f = interpolate(g, x);
        if (f == 0.0) continue;
        // (1 - cos th)(1 + x^2)/x^2 -> 1/2 at x = 0
        s += f * (x == 0.0 ? 0.5 : (1.0 - std::cos(th)) * levy_weight(x));
      }
      vals[i] += s;
    }
  }
  // periodic part: tau = 2/(1+x^2) * translates of sigma~, lattice sums truncated at `translates`
  if (p.periodic) {
    const CircleSigma& ps = *p.periodic;
    for (size_t i = 0; i < ps.atoms.loc.size(); ++i) {
      const double th = ps.atoms.loc[i], w = ps.atoms.weight[i];
      if (th == 0.0) {
        atoms.emplace_back(0.0, w);
        continue;
      }
      drift += w * lattice_drift_kernel(th, translates);
      atoms.emplace_back(th, w * 2.0 * (1.0 - std::cos(th)) * lattice_inverse_square(th, translates));
    }
    if (have_periodic_grid) {
      const auto& g = ps.density;
      std::vector<double> h(g.grid.size());
      for (size_t i = 0; i < g.grid.size(); ++i) {
        const double th = g.grid[i];
        h[i] = g.values[i] * (wrap_angle(th) == 0.0 ? 0.0 : lattice_drift_kernel(th, translates));
        const double fold = (wrap_angle(th) == 0.0) ? 1.0 : 2.0 * (1.0 - std::cos(th)) * lattice_inverse_square(th, translates);
        vals[i] += g.values[i] * fold;
      }
      drift += trapezoid(g.grid, h);
    }
  }
  std::sort(atoms.begin(), atoms.end());
  for (const auto& [th, w] : atoms) {
    if (!out.sigma.atoms.loc.empty() && out.sigma.atoms.loc.back() == th) {
      out.sigma.atoms.weight.back() += w;
    } else {
      out.sigma.atoms.loc.push_back(th);
      out.sigma.atoms.weight.push_back(w);
    }
  }
  if (!grid.empty()) out.sigma.density = make_grid_density(grid, vals, HUGE_VAL);
  out.gamma = std::exp(cplx(0.0, -p.xi - drift));
  return out;
}

AdditivePair mult_to_additive_pair(cplx gamma, const CircleSigma& sigma, int arg_branch) {
  if (std::abs(std::abs(gamma) - 1.0) > 1e-12) throw Error(ErrorKind::Domain, "gamma must have modulus 1");
  for (double th : sigma.atoms.loc)
    if (!(th >= 0.0 && th < kTwoPi)) throw Error(ErrorKind::Domain, "sigma atoms must sit in [0, 2 pi)");
  if (!sigma.density.grid.empty() && (sigma.density.grid.front() < 0.0 || sigma.density.grid.back() > kTwoPi))
    throw Error(ErrorKind::Domain, "sigma density must live on [0, 2 pi]");
  AdditivePair p;
  const double arg = std::arg(gamma) + kTwoPi * arg_branch;
  double drift = 0.0;
  for (size_t i = 0; i < sigma.atoms.loc.size(); ++i)
    if (sigma.atoms.loc[i] != 0.0) drift += sigma.atoms.weight[i] * drift_kernel_closed(sigma.atoms.loc[i]);
  if (!sigma.density.grid.empty()) {
    std::vector<double> h(sigma.density.grid.size());
    for (size_t i = 0; i < h.size(); ++i) {
      const double th = sigma.density.grid[i];
      h[i] = wrap_angle(th) == 0.0 ? 0.0 : sigma.density.values[i] * drift_kernel_closed(th);
    }
    drift += trapezoid(sigma.density.grid, h);
  }
  p.xi = -arg - drift;
  p.periodic = sigma;
  return p;
}

double pair_distance(const WrappedPair& a, const WrappedPair& b) {
  double d = std::abs(a.gamma - b.gamma);
  if (a.sigma.atoms.loc.size() != b.sigma.atoms.loc.size()) return HUGE_VAL;
  for (size_t i = 0; i < a.sigma.atoms.loc.size(); ++i) {
    d = std::max(d, std::abs(a.sigma.atoms.loc[i] - b.sigma.atoms.loc[i]));
    d = std::max(d, std::abs(a.sigma.atoms.weight[i] - b.sigma.atoms.weight[i]));
  }
  const auto& g = a.sigma.density;
  if (g.grid.empty() != b.sigma.density.grid.empty()) return HUGE_VAL;
  for (size_t i = 0; i < g.grid.size(); ++i) d = std::max(d, std::abs(g.values[i] - interpolate(b.sigma.density, g.grid[i])));
  return d;
}

double unitary_bm_moment(double t, int m) {
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "time must be >= 0");
  if (m < 1) throw Error(ErrorKind::Domain, "moment order must be >= 1");
  if (t == 0.0) return 1.0;
  // e^{-x/2} L^{(1)}_{m-1}(x) / m with x = m t. The alternating binomial sum cancels
  // badly once x passes ~10; the three-term recurrence does not. Rescaled as it goes.
  const double x = m * t;
  double prev = 1.0, cur = 2.0 - x, lscale = -0.5 * x;
  if (m == 1) cur = prev;
  for (int k = 1; k + 1 < m; ++k) {
    const double next = ((2.0 * k + 2.0 - x) * cur - (k + 1.0) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e200) {
      prev *= 1e-200;
      cur *= 1e-200;
      lscale += 200.0 * std::log(10.0);
    }
  }
  return cur * std::exp(lscale) / m;
}

UnitaryTable unitary_bm_limit_check(const std::vector<double>& t_list, int n_max) {
  UnitaryTable tab;
  std::vector<double> ts(t_list);
  std::sort(ts.begin(), ts.end(), std::greater<>());
  tab.decreasing = ts.size() >= 2;
  std::vector<double> prev(n_max + 1, HUGE_VAL);
  for (double t : ts) {
    if (!(t > 0.0)) throw Error(ErrorKind::Domain, "times must be positive");
    const int steps = static_cast<int>(std::floor(1.0 / std::sqrt(t)));
    for (int n = 1; n <= n_max; ++n) {
      UnitaryRow row;
      row.t = t;
      row.n = n;
      row.value = unitary_bm_moment(t, n * steps);
      row.limit = bessel_j1(2.0 * n) / n;
      row.abs_err = std::abs(row.value - row.limit);
      if (!(row.abs_err < prev[n])) tab.decreasing = false;
      prev[n] = row.abs_err;
      tab.rows.push_back(row);
    }
  }
  return tab;
}

cplx lambda_scaled_voiculescu(double alpha, double rho, double t, cplx z) {
  make_admissible(alpha, rho);
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "time must be positive");
  if (alpha == 1.0) {
    const double a = std::floor(1.0 / t);
    // the shift cancels the (1 - 2 rho) t a log a drift of the rescaled log tan
    const double shift = -(1.0 - 2.0 * rho) * t * a * std::log(a);
    return t * a * lambda_voiculescu(alpha, rho, z / a) + shift;
  }
  const double a = std::floor(std::pow(t, -1.0 / alpha));
  return t * a * lambda_voiculescu(alpha, rho, z / a);
}

LimitTable lambda_voiculescu_convergence(double alpha, double rho, const std::vector<double>& t_list,
                                         const std::vector<cplx>& samples) {
  LimitTable tab;
  tab.alpha = alpha;
  tab.rho = rho;
  for (double t : t_list) {
    double worst = 0.0;
    for (const cplx& z : samples)
      worst = std::max(worst, std::abs(lambda_scaled_voiculescu(alpha, rho, t, z) - free_stable_voiculescu(alpha, rho, z)));
    tab.rows.push_back({t, worst});
  }
  finish_table(tab);
  // non-increasing is enough here: for rho = 1/2 and alpha = 1 the residual is exactly 0 at every t
  tab.decreasing = tab.rows.size() >= 2;
  for (size_t i = 1; i < tab.rows.size(); ++i)
    if (tab.rows[i].sup_distance > tab.rows[i - 1].sup_distance) tab.decreasing = false;
  return tab;
}

}  // namespace freelevy
