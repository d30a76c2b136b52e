#include "freelevy/boolean_small_time.hpp"

#include <algorithm>
#include <cmath>

#include "freelevy/error.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/quadrature.hpp"

namespace freelevy {

namespace {

bool exact_e(const MeasureRep& mu) {
  if (std::holds_alternative<AtomicMeasure>(mu)) return true;
  if (const auto* l = std::get_if<KnownLaw>(&mu)) {
    return std::holds_alternative<law::TwoPoint>(*l) || std::holds_alternative<law::PointMass>(*l) ||
           std::holds_alternative<law::BooleanStable>(*l) || std::holds_alternative<law::Cauchy>(*l) ||
           std::holds_alternative<law::Cusp>(*l) || std::holds_alternative<law::Semicircle>(*l) ||
           std::holds_alternative<law::MarchenkoPastur>(*l);
  }
  return false;
}

// y - F(y + i0). The ladder route must settle to 1e-6, our stand-in for the
// analytic regularity assumption near the evaluation point.
cplx boundary_E(const MeasureRep& mu, double y) {
  if (exact_e(mu)) {
    if (const auto* l = std::get_if<KnownLaw>(&mu)) return known_boundary_e(*l, y);
    return e_transform(mu, cplx(y, 0.0));
  }
  const BoundaryValue b = boundary_F(mu, y);
  if (b.err > 1e-6 * (1.0 + std::abs(b.value)))
    throw Error(ErrorKind::Hypothesis, "boundary value of F not resolved to 1e-6 near the grid");
  return y - b.value;
}

}  // namespace

cplx boolean_power_cauchy(const MeasureRep& mu, double t, cplx z) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::Domain, "Boolean power needs t in [0, 1]");
  if (!(z.imag() > 0.0)) throw Error(ErrorKind::Domain, "Boolean power Cauchy transform needs z in the upper half-plane");
  cplx et{1.0, 0.0};
  if (t > 0.0) et = std::exp(t * log_lower(e_transform(mu, z)));
  const cplx den = z - et;
  if (std::abs(den) < 1e-300) throw Error(ErrorKind::Pole, "Boolean power denominator vanishes");
  return 1.0 / den;
}

double boolean_power_density_at(const MeasureRep& mu, double t, double power, double x) {
  if (!(t > 0.0 && t < 1.0 + 1e-15)) throw Error(ErrorKind::Domain, "Boolean power density needs t in (0, 1]");
  if (!(power > 0.0)) throw Error(ErrorKind::Domain, "power must be positive");
  if (!(x > 0.0)) throw Error(ErrorKind::Domain, "density evaluated on (0, inf)");
  const double s = 1.0 / power;
  const double lx = std::log(x);
  const double y = std::exp(s * lx);
  const cplx e = boundary_E(mu, y);
  // x^{-s} (x^s - F)^t - 1, kept in log form since x^s may overflow
  const cplx d = cexpm1(t * log_lower(e) - s * lx);
  if (std::abs(d) < 1e-300) throw Error(ErrorKind::Pole, "Boolean power density denominator vanishes");
  return s / (kPi * x) * (1.0 / d).imag();
}

GridDensity boolean_power_density(const BooleanPowerDensityRequest& req) {
  if (!(req.k_lo > 0.0 && req.k_hi > req.k_lo)) throw Error(ErrorKind::Domain, "K must be a compact interval in (0, inf)");
  if (req.grid_size < 2) throw Error(ErrorKind::Domain, "grid needs at least two points");
  const auto grid = linspace(req.k_lo, req.k_hi, req.grid_size);
  std::vector<double> vals(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    double d = boolean_power_density_at(req.mu, req.t, req.power, grid[i]);
    if (d < 0.0) {
      if (d < -1e-8) throw Error(ErrorKind::Inversion, "Boolean power density is negative");
      d = 0.0;
    }
    vals[i] = d;
  }
  return make_grid_density(grid, std::move(vals));
}

cplx additive_boolean_power_cauchy(const MeasureRep& mu, double t, cplx z) {
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "additive Boolean power needs t >= 0");
  const cplx den = z - t * e_transform(mu, z);
  if (std::abs(den) < 1e-300) throw Error(ErrorKind::Pole, "additive Boolean power denominator vanishes");
  return 1.0 / den;
}

double additive_boolean_power_density(const MeasureRep& mu, double t, double x) {
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "additive Boolean power needs t >= 0");
  const cplx e = cplx(x, 0.0) - boundary_F(mu, x).value;
  const cplx den = x - t * e;
  if (std::abs(den) < 1e-300) throw Error(ErrorKind::Pole, "additive Boolean power denominator vanishes");
  return -(1.0 / den).imag() / kPi;
}

void finish_table(LimitTable& tab, bool t_ascending) {
  std::sort(tab.rows.begin(), tab.rows.end(),
            [&](const LimitRow& a, const LimitRow& b) { return t_ascending ? a.t < b.t : a.t > b.t; });
  tab.decreasing = tab.rows.size() >= 2;
  for (size_t i = 1; i < tab.rows.size(); ++i)
    if (!(tab.rows[i].sup_distance < tab.rows[i - 1].sup_distance)) tab.decreasing = false;
}

std::pair<double, double> log_cauchy_parameters(const MeasureRep& mu) {
  const cplx f1 = boundary_F(mu, 1.0).value;
  const bool upper = f1.imag() > 1e-14;
  const bool right = std::abs(f1.imag()) <= 1e-14 && f1.real() > 1.0;
  if (!upper && !right) throw Error(ErrorKind::Hypothesis, "F(1) must lie in the upper half-plane or in (1, inf)");
  const cplx l = log_lower(cplx(1.0 - f1.real(), -std::abs(f1.imag())));
  const double gamma = -l.imag();
  if (!(gamma > 0.0 && gamma <= kPi)) throw Error(ErrorKind::Hypothesis, "log-Cauchy scale outside (0, pi]");
  return {l.real(), gamma};
}

LimitTable log_cauchy_limit_check(const MeasureRep& mu, const std::vector<double>& t_list, double k_lo, double k_hi,
                                  int grid_size) {
  LimitTable tab;
  const auto [beta, gamma] = log_cauchy_parameters(mu);
  tab.beta = beta;
  tab.gamma = gamma;
  const auto grid = linspace(k_lo, k_hi, grid_size);
  const GridDensity lim = sample_density([&](double x) { return log_cauchy_density(beta, gamma, x); }, grid);
  for (double t : t_list) {
    const GridDensity d = boolean_power_density({mu, t, 1.0 / t, k_lo, k_hi, grid_size});
    tab.rows.push_back({t, sup_density_distance(d, lim, k_lo, k_hi)});
  }
  finish_table(tab);
  return tab;
}

LimitTable log_boolean_stable_limit_check(double alpha, double kp_lo, double kp_hi, double km_lo, double km_hi,
                                          const std::vector<double>& t_list, int grid_size) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::Domain, "cusp construction needs alpha in (0, 1)");
  if (!(km_lo > 0.0 && km_hi < 1.0 && kp_lo > 1.0)) throw Error(ErrorKind::Domain, "intervals must sit in (0,1) and (1,inf)");
  LimitTable tab;
  tab.alpha = alpha;
  tab.rho = 0.5;
  tab.r = 2.0 * std::sin(0.5 * alpha * kPi) / (alpha * kPi);
  const MeasureRep mu = KnownLaw{law::Cusp{alpha}};
  const auto gp = linspace(kp_lo, kp_hi, grid_size);
  const auto gm = linspace(km_lo, km_hi, grid_size);
  auto limit_on = [&](const std::vector<double>& g) {
    return sample_density([&](double x) { return log_boolean_stable_density(alpha, tab.rho, tab.r, x); }, g);
  };
  const GridDensity lp = limit_on(gp), lm = limit_on(gm);
  for (double t : t_list) {
    const double power = std::pow(t, -1.0 / alpha);
    const GridDensity dp = boolean_power_density({mu, t, power, kp_lo, kp_hi, grid_size});
    const GridDensity dm = boolean_power_density({mu, t, power, km_lo, km_hi, grid_size});
    const double dist = std::max(sup_density_distance(dp, lp, kp_lo, kp_hi), sup_density_distance(dm, lm, km_lo, km_hi));
    tab.rows.push_back({t, dist});
  }
  finish_table(tab);
  return tab;
}

}  // namespace freelevy
