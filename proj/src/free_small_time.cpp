#include "freelevy/free_small_time.hpp"

#include <algorithm>
#include <cmath>

#include "freelevy/ecalc.hpp"
#include "freelevy/error.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/quadrature.hpp"

namespace freelevy {

namespace {

// y g(y) of mu^{boxtimes t}: with eta_{mu^t} = omega_{1+t},
// y G(y(1 + i d)) = 1 / ((1 + i d)(1 - omega(1 / (y(1 + i d))))).
double scaled_density(const EClassMap& e, double t, double y, double scale, const std::vector<double>& ladder) {
  std::vector<double> rungs(ladder);
  for (auto& d : rungs) d *= scale;
  const BoundaryValue b = extrapolate_ladder(
      [&](double d) {
        const cplx one_id(1.0, d);
        const cplx om = complex_free_power_near_one(e, t, 1.0 / (y * one_id)).omega;
        return 1.0 / (one_id * (1.0 - om));
      },
      rungs);
  return -b.value.imag() / kPi;
}

}  // namespace

double free_power_density_at(const KnownLaw& law, double t, double power, double x, const std::vector<double>& ladder) {
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "free power density needs t > 0");
  if (!(power > 0.0)) throw Error(ErrorKind::Domain, "power must be positive");
  if (!(x > 0.0)) throw Error(ErrorKind::Domain, "density evaluated on (0, inf)");
  const EClassMap e = from_v_function(law);
  const double s = 1.0 / power;
  const double y = std::exp(s * std::log(x));
  if (!(y > 0.0) || !std::isfinite(y)) throw Error(ErrorKind::Domain, "x^(1/power) leaves the double range");
  return s / x * scaled_density(e, t, y, std::min(1.0, s), ladder);
}

GridDensity free_power_density(const KnownLaw& law, double t, double power, const std::vector<double>& grid,
                               const std::vector<double>& ladder) {
  std::vector<double> vals(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    double d = free_power_density_at(law, t, power, grid[i], ladder);
    if (d < 0.0) {
      if (d < -1e-8) throw Error(ErrorKind::Inversion, "free power density is negative");
      d = 0.0;
    }
    vals[i] = d;
  }
  return make_grid_density(grid, std::move(vals));
}

GridDensity free_power_density(const KnownLaw& law, double t, double power, double k_lo, double k_hi, int grid_size,
                               const std::vector<double>& ladder) {
  if (!(k_lo > 0.0 && k_hi > k_lo)) throw Error(ErrorKind::Domain, "K must be a compact interval in (0, inf)");
  return free_power_density(law, t, power, linspace(k_lo, k_hi, grid_size), ladder);
}

GridDensity boolean_stable_boxtimes_density(double alpha, double t, double power, const std::vector<double>& grid) {
  const double a = boolean_stable_boxtimes_alpha(alpha, t);
  const double s = 1.0 / power;
  return sample_density(
      [&](double x) {
        const double y = std::exp(s * std::log(x));
        return s / x * y * boolean_stable_density(a, 1.0, 1.0, y);
      },
      grid);
}

std::pair<double, double> free_log_cauchy_parameters(const KnownLaw& law) {
  if (!is_boxtimes_id(law)) throw Error(ErrorKind::NotInfinitelyDivisible, describe(law) + " has no v function");
  BoundaryValue b;
  try {
    b = extrapolate_ladder([&](double e) { return v_function_of(law, cplx(1.0, -e)); }, kDefaultLadder);
  } catch (const Error&) {
    throw Error(ErrorKind::Hypothesis, "v has no boundary value at 1");
  }
  if (!finite(b.value) || b.err > 1e-3 * (1.0 + std::abs(b.value)))
    throw Error(ErrorKind::Hypothesis, "v does not extend continuously to 1");
  if (!(b.value.imag() > 0.0)) throw Error(ErrorKind::Hypothesis, "v(1) is not in the upper half-plane");
  return {-b.value.real(), b.value.imag()};
}

LimitTable log_cauchy_free_limit_check(const KnownLaw& law, const std::vector<double>& t_list, double k_lo,
                                       double k_hi, int grid_size) {
  LimitTable tab;
  const auto [beta, gamma] = free_log_cauchy_parameters(law);
  tab.beta = beta;
  tab.gamma = gamma;
  const auto grid = linspace(k_lo, k_hi, grid_size);
  const GridDensity lim = sample_density([&](double x) { return log_cauchy_density(beta, gamma, x); }, grid);
  for (double t : t_list) {
    const GridDensity d = free_power_density(law, t, 1.0 / t, grid);
    tab.rows.push_back({t, sup_density_distance(d, lim, k_lo, k_hi)});
  }
  finish_table(tab);
  return tab;
}

double TucciLimit::cdf(double q) const {
  if (degenerate) return q < atom ? 0.0 : 1.0;
  if (q <= quantiles.front()) return q < support_lo ? 0.0 : levels.front() * (q - support_lo) / (quantiles.front() - support_lo);
  if (q >= quantiles.back()) return q >= support_hi ? 1.0 : levels.back() + (1.0 - levels.back()) * (q - quantiles.back()) / (support_hi - quantiles.back());
  auto it = std::upper_bound(quantiles.begin(), quantiles.end(), q);
  const size_t i = static_cast<size_t>(it - quantiles.begin()) - 1;
  const double w = (q - quantiles[i]) / (quantiles[i + 1] - quantiles[i]);
  return (1.0 - w) * levels[i] + w * levels[i + 1];
}

TucciLimit tucci_limit(const MeasureRep& mu, int n) {
  if (n < 8) throw Error(ErrorKind::Domain, "need at least 8 levels");
  TucciLimit out;
  double atom0 = 0.0;
  if (const auto* l = std::get_if<KnownLaw>(&mu))
    if (const auto* pm = std::get_if<law::PointMass>(l)) atom0 = pm->a == 0.0 ? 1.0 : 0.0;
  if (atom0 >= 1.0) throw Error(ErrorKind::Domain, "the point mass at 0 is excluded");
  out.levels.resize(n);
  out.quantiles.resize(n);
  for (int k = 0; k < n; ++k) {
    const double x = atom0 + (1.0 - atom0) * (k + 0.5) / n;
    out.levels[k] = x;
    out.quantiles[k] = 1.0 / s_transform(mu, x - 1.0);
  }
  const double span = out.quantiles.back() - out.quantiles.front();
  if (std::abs(span) <= 1e-12 * std::abs(out.quantiles.front())) {
    out.degenerate = true;
    out.atom = out.quantiles.front();
    out.support_lo = out.support_hi = out.atom;
    return out;
  }
  for (int k = 1; k < n; ++k)
    if (!(out.quantiles[k] > out.quantiles[k - 1]))
      throw Error(ErrorKind::Construction, "quantile 1/S(x-1) is not increasing");
  out.support_lo = 1.0 / s_transform(mu, -1.0 + 1e-12);
  if (!std::isfinite(out.support_lo) || out.support_lo < 0.0) out.support_lo = 0.0;
  out.support_hi = 1.0 / s_transform(mu, -1e-12);
  out.support_lo = std::min(out.support_lo, out.quantiles.front());
  out.support_hi = std::max(out.support_hi, out.quantiles.back());
  std::vector<double> dens(n);
  for (int k = 0; k < n; ++k) {
    const int a = std::max(k - 1, 0), b = std::min(k + 1, n - 1);
    dens[k] = (out.levels[b] - out.levels[a]) / (out.quantiles[b] - out.quantiles[a]);
  }
  // the grid only carries the levels between the first and last node
  const double mass = trapezoid(out.quantiles, dens) / (out.levels.back() - out.levels.front());
  for (auto& d : dens) d /= mass;
  out.density = make_grid_density(out.quantiles, std::move(dens));
  return out;
}

LimitTable tucci_convergence_check(const KnownLaw& law, const std::vector<double>& t_list, double k_lo, double k_hi,
                                   int grid_size) {
  LimitTable tab;
  const TucciLimit lim = tucci_limit(MeasureRep{law});
  const auto grid = linspace(k_lo, k_hi, grid_size);
  for (double t : t_list) {
    const GridDensity d = free_power_density(law, t, 1.0 / t, grid);
    double dist = 0.0;
    if (lim.degenerate) {
      // no density to compare with; any mass the power puts on K counts as distance
      for (double v : d.values) dist = std::max(dist, v);
    } else {
      dist = sup_density_distance(d, lim.density, k_lo, k_hi);
    }
    tab.rows.push_back({t, dist});
  }
  finish_table(tab, true);
  return tab;
}

}  // namespace freelevy
