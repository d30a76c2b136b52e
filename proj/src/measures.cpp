#include "freelevy/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "freelevy/error.hpp"
#include "freelevy/kernels.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/quadrature.hpp"

namespace freelevy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

double atomic_total(const AtomicMeasure& a) {
  double s = 0.0;
  for (double w : a.weight) s += w;
  return s;
}

cplx atomic_cauchy(const AtomicMeasure& a, cplx z) {
  if (z.imag() == 0.0) {
    auto it = std::lower_bound(a.loc.begin(), a.loc.end(), z.real());
    if (it != a.loc.end() && *it == z.real()) throw Error(ErrorKind::Pole, "evaluation point sits on an atom");
  }
  return kernels::cauchy_sum(a.loc.data(), a.weight.data(), a.loc.size(), z);
}

// Exact integral of the piecewise linear interpolant against 1/(z-u) on one segment.
cplx segment_exact(double u0, double u1, double f0, double f1, cplx z) {
  const double h = u1 - u0;
  const double s = (f1 - f0) / h;
  const cplx fz = f0 + s * (z - u0);
  const cplx L = clog1p(h / (z - u1));
  return fz * L - s * h;
}

constexpr int kFarOrder = 4;
constexpr double kNearFactor = 64.0;

cplx grid_cauchy(const GridDensity& g, cplx z) {
  const auto& u = g.grid;
  const auto& f = g.values;
  const std::size_t n = u.size();
  if (z.imag() == 0.0 && z.real() >= u.front() && z.real() <= u.back())
    throw Error(ErrorKind::Boundary, "real evaluation point inside the grid support; use boundary_F");
  const QuadRule& gl = gauss_legendre(kFarOrder);
  std::vector<double> xs, ws;
  xs.reserve((n - 1) * kFarOrder);
  ws.reserve((n - 1) * kFarOrder);
  cplx near{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = u[i + 1] - u[i];
    const double mid = 0.5 * (u[i] + u[i + 1]);
    if (f[i] == 0.0 && f[i + 1] == 0.0) continue;
    if (std::abs(z - mid) <= kNearFactor * h) {
      near += segment_exact(u[i], u[i + 1], f[i], f[i + 1], z);
      continue;
    }
    for (int k = 0; k < kFarOrder; ++k) {
      const double x = mid + 0.5 * h * gl.nodes[k];
      const double fx = f[i] + (f[i + 1] - f[i]) * (x - u[i]) / h;
      xs.push_back(x);
      ws.push_back(0.5 * h * gl.weights[k] * fx);
    }
  }
  return near + kernels::cauchy_sum(xs.data(), ws.data(), xs.size(), z);
}

double atomic_mean(const AtomicMeasure& a) {
  double m = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.loc.size(); ++i) {
    m += a.weight[i] * a.loc[i];
    s += a.weight[i];
  }
  return m / s;
}

// Integral of x^p over [a, b], 0 <= a < b.
double power_integral(double p, double a, double b) {
  if (p == -1.0) return std::log(b / a);
  return (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0);
}

double grid_mellin(const GridDensity& g, double gamma) {
  if (g.grid.front() < 0.0) throw Error(ErrorKind::Domain, "Mellin moment needs a density on [0, inf)");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.grid.size(); ++i) {
    const double a = g.grid[i], b = g.grid[i + 1];
    const double fa = g.values[i], fb = g.values[i + 1];
    if (fa == 0.0 && fb == 0.0) continue;
    const double s = (fb - fa) / (b - a);
    const double c0 = fa - s * a;
    if (a == 0.0 && ((c0 != 0.0 && gamma <= -1.0) || (s != 0.0 && gamma <= -2.0)))
      throw Error(ErrorKind::Divergence, "x^gamma is not integrable at 0 against this density");
    acc += c0 * power_integral(gamma, a, b) + s * power_integral(gamma + 1.0, a, b);
  }
  if (!std::isfinite(acc) || std::abs(acc) > 1e12) throw Error(ErrorKind::Divergence, "Mellin quadrature blew up");
  return acc;
}

double atomic_mellin(const AtomicMeasure& a, double gamma) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.loc.size(); ++i) {
    const double x = a.loc[i];
    if (x < 0.0) throw Error(ErrorKind::Domain, "Mellin moment needs atoms in [0, inf)");
    if (x == 0.0) {
      if (gamma < 0.0) throw Error(ErrorKind::Divergence, "negative moment of an atom at 0");
      if (gamma == 0.0) acc += a.weight[i];
      continue;
    }
    acc += a.weight[i] * std::pow(x, gamma);
  }
  return acc;
}

}  // namespace

AtomicMeasure make_atomic(std::vector<double> loc, std::vector<double> weight, double total) {
  if (loc.size() != weight.size() || loc.empty()) throw Error(ErrorKind::Domain, "atom lists must be non-empty and equal length");
  if (!strictly_increasing(loc)) throw Error(ErrorKind::Domain, "atom locations must be strictly increasing");
  for (double w : weight)
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::Domain, "atom weights must be positive");
  AtomicMeasure a{std::move(loc), std::move(weight)};
  if (std::abs(atomic_total(a) - total) > 1e-12) throw Error(ErrorKind::Domain, "atom weights must sum to the stated mass");
  return a;
}

GridDensity make_grid_density(std::vector<double> grid, std::vector<double> values, double max_mass) {
  if (grid.size() != values.size() || grid.size() < 2) throw Error(ErrorKind::Domain, "grid density needs >= 2 matching samples");
  if (!strictly_increasing(grid)) throw Error(ErrorKind::Domain, "grid must be strictly increasing");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::Domain, "density values must be finite and nonnegative");
  GridDensity g{std::move(grid), std::move(values), 0.0};
  g.mass = trapezoid(g.grid, g.values);
  if (g.mass > max_mass + 1e-6) throw Error(ErrorKind::Domain, "grid density carries more than unit mass");
  return g;
}

Mixed make_mixed(AtomicMeasure atoms, GridDensity density) {
  if (std::abs(atomic_total(atoms) + density.mass - 1.0) > 1e-6) throw Error(ErrorKind::Domain, "mixed measure must have unit mass");
  return Mixed{std::move(atoms), std::move(density)};
}

double total_mass(const MeasureRep& mu) {
  return std::visit(overloaded{
                        [](const AtomicMeasure& a) { return atomic_total(a); },
                        [](const GridDensity& g) { return g.mass; },
                        [](const Mixed& m) { return atomic_total(m.atoms) + m.density.mass; },
                        [](const KnownLaw& l) { return known_mass(l); },
                    },
                    mu);
}

cplx cauchy_transform(const MeasureRep& mu, cplx z) {
  if (!finite(z)) throw Error(ErrorKind::Domain, "non-finite evaluation point");
  return std::visit(overloaded{
                        [&](const AtomicMeasure& a) { return atomic_cauchy(a, z); },
                        [&](const GridDensity& g) { return grid_cauchy(g, z); },
                        [&](const Mixed& m) { return atomic_cauchy(m.atoms, z) + grid_cauchy(m.density, z); },
                        [&](const KnownLaw& l) { return known_cauchy(l, z); },
                    },
                    mu);
}

cplx f_transform(const MeasureRep& mu, cplx z) {
  const cplx g = cauchy_transform(mu, z);
  if (std::abs(g) < 1e-300) throw Error(ErrorKind::Division, "Cauchy transform vanishes numerically");
  return 1.0 / g;
}

cplx eta_transform(const MeasureRep& mu, cplx z) {
  if (z == cplx(0.0, 0.0)) return {0.0, 0.0};
  const cplx w = 1.0 / z;
  // 1 - zF(1/z) = 1 - z(1/z - E(1/z)) = z E(1/z)
  return z * e_transform(mu, w);
}

cplx e_transform(const MeasureRep& mu, cplx z) {
  return std::visit(overloaded{
                        [&](const AtomicMeasure& a) -> cplx {
                          if (std::abs(z) > 1e200) return atomic_mean(a);
                          if (z.imag() == 0.0) atomic_cauchy(a, z);  // pole check
                          std::vector<double> xw(a.loc.size());
                          for (std::size_t i = 0; i < xw.size(); ++i) xw[i] = a.weight[i] * a.loc[i];
                          const cplx num = kernels::cauchy_sum(a.loc.data(), xw.data(), xw.size(), z);
                          const cplx den = kernels::cauchy_sum(a.loc.data(), a.weight.data(), a.loc.size(), z);
                          if (std::abs(den) < 1e-300) throw Error(ErrorKind::Division, "Cauchy transform vanishes numerically");
                          return num / den;
                        },
                        [&](const GridDensity&) -> cplx { return z - f_transform(mu, z); },
                        [&](const Mixed&) -> cplx { return z - f_transform(mu, z); },
                        [&](const KnownLaw& l) -> cplx { return known_e_transform(l, z); },
                    },
                    mu);
}

BoundaryValue extrapolate_ladder(const std::function<cplx(double)>& at_eps, const std::vector<double>& ladder) {
  if (ladder.size() < 2) throw Error(ErrorKind::Domain, "ladder needs at least two rungs");
  for (double e : ladder)
    if (!(e > 0.0)) throw Error(ErrorKind::Domain, "ladder rungs must be positive");
  std::vector<cplx> v(ladder.size());
  for (std::size_t k = 0; k < ladder.size(); ++k) v[k] = at_eps(ladder[k]);
  auto rich = [&](std::size_t a, std::size_t b) {
    return (ladder[a] * v[b] - ladder[b] * v[a]) / (ladder[a] - ladder[b]);
  };
  const std::size_t m = ladder.size();
  if (m == 2) return {rich(0, 1), std::abs(v[1] - v[0])};
  const cplx r1 = rich(m - 3, m - 2);
  const cplx r2 = rich(m - 2, m - 1);
  return {r2, std::abs(r2 - r1)};
}

BoundaryValue boundary_F(const MeasureRep& mu, double x, const std::vector<double>& ladder) {
  if (const auto* l = std::get_if<KnownLaw>(&mu)) {
    const bool exact = std::holds_alternative<law::TwoPoint>(*l) || std::holds_alternative<law::PointMass>(*l) ||
                       std::holds_alternative<law::BooleanStable>(*l) || std::holds_alternative<law::Cauchy>(*l) ||
                       std::holds_alternative<law::Cusp>(*l) || std::holds_alternative<law::Semicircle>(*l) ||
                       std::holds_alternative<law::MarchenkoPastur>(*l);
    if (exact) return {cplx(x, 0.0) - known_boundary_e(*l, x), 0.0};
  }
  if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
    return {cplx(x, 0.0) - e_transform(*a, cplx(x, 0.0)), 0.0};
  }
  BoundaryValue b = extrapolate_ladder([&](double e) { return f_transform(mu, cplx(x, e)); }, ladder);
  if (!finite(b.value) || b.err > 1e-3 * (1.0 + std::abs(b.value)))
    throw Error(ErrorKind::Boundary, "boundary value of F does not settle along the ladder");
  return b;
}

GridDensity stieltjes_invert(const std::function<cplx(cplx)>& G, const std::vector<double>& grid,
                             const std::vector<double>& ladder) {
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const BoundaryValue b = extrapolate_ladder([&](double e) { return G(cplx(x, e)); }, ladder);
    double d = -b.value.imag() / kPi;
    if (d < 0.0) {
      if (d < -1e-8) throw Error(ErrorKind::Inversion, "extrapolated density is negative");
      d = 0.0;
    }
    vals[i] = d;
  }
  return make_grid_density(grid, std::move(vals));
}

double mellin_moment(const MeasureRep& mu, double gamma) {
  return std::visit(overloaded{
                        [&](const AtomicMeasure& a) { return atomic_mellin(a, gamma); },
                        [&](const GridDensity& g) { return grid_mellin(g, gamma); },
                        [&](const Mixed& m) { return atomic_mellin(m.atoms, gamma) + grid_mellin(m.density, gamma); },
                        [&](const KnownLaw& l) { return known_mellin(l, gamma); },
                    },
                    mu);
}

double interpolate(const GridDensity& g, double x) {
  const auto& u = g.grid;
  if (x < u.front() || x > u.back()) return 0.0;
  auto it = std::upper_bound(u.begin(), u.end(), x);
  if (it == u.end()) return g.values.back();
  const std::size_t i = static_cast<std::size_t>(it - u.begin()) - 1;
  const double w = (x - u[i]) / (u[i + 1] - u[i]);
  return (1.0 - w) * g.values[i] + w * g.values[i + 1];
}

double sup_density_distance(const GridDensity& p, const GridDensity& q, double lo, double hi) {
  if (!(lo < hi)) throw Error(ErrorKind::Domain, "empty comparison interval");
  if (p.grid.front() > lo || p.grid.back() < hi || q.grid.front() > lo || q.grid.back() < hi)
    throw Error(ErrorKind::Domain, "comparison interval not covered by both grids");
  std::vector<double> pts{lo, hi};
  for (double x : p.grid)
    if (x > lo && x < hi) pts.push_back(x);
  for (double x : q.grid)
    if (x > lo && x < hi) pts.push_back(x);
  double best = 0.0;
  for (double x : pts) best = std::max(best, std::abs(interpolate(p, x) - interpolate(q, x)));
  return best;
}

double mass_on(const GridDensity& g, double lo, double hi) {
  std::vector<double> x{lo}, y{interpolate(g, lo)};
  for (std::size_t i = 0; i < g.grid.size(); ++i)
    if (g.grid[i] > lo && g.grid[i] < hi) {
      x.push_back(g.grid[i]);
      y.push_back(g.values[i]);
    }
  x.push_back(hi);
  y.push_back(interpolate(g, hi));
  return trapezoid(x, y);
}

GridDensity sample_density(const std::function<double(double)>& f, const std::vector<double>& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  return make_grid_density(grid, std::move(v));
}

std::string grid_density_csv(const GridDensity& g) {
  std::ostringstream os;
  os << "x,density\n";
  char buf[64];
  for (std::size_t i = 0; i < g.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.grid[i], g.values[i]);
    os << buf;
  }
  return os.str();
}

}  // namespace freelevy
