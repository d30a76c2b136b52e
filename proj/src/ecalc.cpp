#include "freelevy/ecalc.hpp"

#include <cmath>
#include <memory>

#include "freelevy/error.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/quadrature.hpp"

namespace freelevy {

double EClassMap::eta(double x) const { return x * std::exp(-u(x)); }

std::vector<double> eclass_grid(int n, double decades) {
  std::vector<double> g = logspace(std::pow(10.0, decades), std::pow(10.0, -decades), n);
  for (auto& x : g) x = -x;
  return g;
}

double eclass_violation(const EClassMap& e, const std::vector<double>& grid) {
  double worst = 0.0;
  double prev = e.u(grid.front());
  for (size_t i = 1; i < grid.size(); ++i) {
    const double cur = e.u(grid[i]);
    const double bad = (cur - prev) / (1.0 + std::abs(prev));
    if (bad > worst) worst = bad;
    prev = cur;
  }
  return worst;
}

bool in_eclass(const EClassMap& e, const std::vector<double>& grid, double tol) {
  for (double x : grid) {
    if (!(e.eta(x) < 0.0)) return false;
  }
  return eclass_violation(e, grid) <= tol;
}

namespace {

bool is_delta_zero(const MeasureRep& mu) {
  if (auto k = std::get_if<KnownLaw>(&mu)) {
    if (auto pm = std::get_if<law::PointMass>(k)) return pm->a == 0.0;
    return false;
  }
  if (auto a = std::get_if<AtomicMeasure>(&mu)) {
    for (size_t i = 0; i < a->loc.size(); ++i)
      if (a->loc[i] != 0.0 && a->weight[i] != 0.0) return false;
    return true;
  }
  return false;
}

}  // namespace

EClassMap from_probability_measure(const MeasureRep& mu) {
  if (is_delta_zero(mu)) throw Error(ErrorKind::Domain, "the point mass at 0 has no eta map in the class");
  auto keep = std::make_shared<MeasureRep>(mu);
  EClassMap e;
  e.u = [keep](double x) {
    const double eta = eta_transform(*keep, cplx(x, 0.0)).real();
    if (!(eta < 0.0)) throw Error(ErrorKind::Domain, "eta of the measure is not negative on the negative axis");
    return std::log(x / eta);
  };
  e.label = "eta of measure";
  return e;
}

EClassMap from_v_function(const KnownLaw& law) {
  if (!is_boxtimes_id(law))
    throw Error(ErrorKind::NotInfinitelyDivisible, describe(law) + " has no v function");
  EClassMap e;
  e.u = [law](double x) { return v_function_of(law, cplx(x, 0.0)).real(); };
  e.complex_u = [law](cplx w, cplx* du) {
    if (du) *du = v_derivative_of(law, w);
    return v_function_of(law, w);
  };
  if (std::holds_alternative<law::BooleanStable>(law)) {
    e.i_lo = 0.0;
    e.i_hi = HUGE_VAL;
  }
  e.label = "x/Sigma of " + describe(law);
  return e;
}

EClassMap boolean_power(const EClassMap& e, double s) {
  if (!(s >= 0.0)) throw Error(ErrorKind::Domain, "Boolean power needs s >= 0");
  EClassMap out = e;
  const RealU u = e.u;
  out.u = [u, s](double x) { return s == 0.0 ? 0.0 : s * u(x); };
  if (e.complex_u) {
    const ComplexU cu = e.complex_u;
    out.complex_u = [cu, s](cplx w, cplx* du) {
      const cplx v = cu(w, du);
      if (du) *du *= s;
      return s * v;
    };
  }
  return out;
}

double free_power(const EClassMap& e, double t, double x) {
  if (!(t >= 1.0)) throw Error(ErrorKind::Domain, "free power needs t >= 1");
  if (!(x < 0.0)) throw Error(ErrorKind::Domain, "free power is defined on the negative axis");
  const double w = invert_phi_real(e.u, t - 1.0, x);
  return e.eta(w);
}

std::vector<double> free_power(const EClassMap& e, double t, const std::vector<double>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(free_power(e, t, x));
  return out;
}

EClassMap free_power_map(const EClassMap& e, double t) {
  if (!(t >= 1.0)) throw Error(ErrorKind::Domain, "free power needs t >= 1");
  if (t == 1.0) return e;
  EClassMap out = e;
  const RealU u = e.u;
  out.u = [u, t](double x) { return t * u(invert_phi_real(u, t - 1.0, x)); };
  if (e.complex_u) {
    const ComplexU cu = e.complex_u;
    out.complex_u = [cu, t](cplx z, cplx* du) {
      const cplx om = track_root(cu, t - 1.0, z).omega;
      cplx d;
      const cplx v = cu(om, &d);
      if (du) {
        // omega' from log(omega) + (t-1) u(omega) = log z
        const cplx dom = 1.0 / (z * (1.0 / om + (t - 1.0) * d));
        *du = t * d * dom;
      }
      return t * v;
    };
  }
  out.label = e.label + " free power";
  return out;
}

SubordinationResult subordination(const EClassMap& e, double t, const std::vector<double>& grid) {
  if (!(t >= 1.0)) throw Error(ErrorKind::Domain, "subordination needs t >= 1");
  SubordinationResult r;
  r.t = t;
  const RealU u = e.u;
  r.omega = [u, t](double x) { return invert_phi_real(u, t - 1.0, x); };
  for (double x : grid) {
    const double w = r.omega(x);
    const double phi = w * std::exp((t - 1.0) * u(w));
    r.residual = std::max(r.residual, std::abs(phi - x) / std::abs(x));
    const double et = e.eta(w);
    const double closed = et * std::pow(x / et, 1.0 / t);
    r.closed_relation_residual = std::max(r.closed_relation_residual, std::abs(closed - w) / std::abs(w));
  }
  return r;
}

EClassMap bp_map(const EClassMap& e) { return boolean_power(free_power_map(e, 2.0), 0.5); }

EClassMap semigroup_at(const EClassMap& e, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "semigroup time must be positive");
  return boolean_power(free_power_map(e, 1.0 + t), t / (1.0 + t));
}

NearOnePoint complex_free_power_near_one(const EClassMap& e, double t, cplx z) {
  if (!e.complex_u) throw Error(ErrorKind::Domain, "complex continuation needs a complex u");
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "continuation time must be >= 0");
  NearOnePoint p;
  if (t == 0.0) {
    p.omega = z;
  } else {
    const RootTrack rt = track_root(e.complex_u, t, z);
    p.omega = rt.omega;
    p.newton_iterations = rt.newton_iterations;
  }
  p.value = z * std::exp(-e.complex_u(p.omega, nullptr));
  return p;
}

AdaptiveNearOne adaptive_near_one(const EClassMap& e, double t, const std::vector<cplx>& zs, int max_halvings) {
  AdaptiveNearOne out;
  out.t = t;
  for (;;) {
    try {
      out.points.clear();
      for (const cplx& z : zs) out.points.push_back(complex_free_power_near_one(e, out.t, z));
      return out;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Continuation || out.halvings >= max_halvings) throw;
      out.t *= 0.5;
      ++out.halvings;
    }
  }
}

}  // namespace freelevy
