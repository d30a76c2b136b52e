#pragma once

#include <string>
#include <vector>

#include "freelevy/law_types.hpp"
#include "freelevy/measures.hpp"
#include "freelevy/subordination.hpp"

namespace freelevy {

// eta(x) = x * exp(-u(x)) on (-inf, 0) with u continuous and non-increasing.
// complex_u, when present, extends u to (iC+) u C- and up to the real
// interval [i_lo, i_hi] around 1.
struct EClassMap {
  RealU u;
  ComplexU complex_u;
  double i_lo = 0.0;
  double i_hi = 0.0;
  std::string label;

  double eta(double x) const;
  bool has_complex() const { return static_cast<bool>(complex_u); }
};

// 256 points, -1e3 .. -1e-3, increasing.
std::vector<double> eclass_grid(int n = 256, double decades = 3.0);

// Largest violation of u(x1) >= u(x2) for x1 <= x2 over the grid (0 when monotone).
double eclass_violation(const EClassMap& e, const std::vector<double>& grid);
bool in_eclass(const EClassMap& e, const std::vector<double>& grid, double tol = 1e-12);

EClassMap from_probability_measure(const MeasureRep& mu);
// x / Sigma(x) = x exp(-v(x)) for a law with a v function.
EClassMap from_v_function(const KnownLaw& law);

EClassMap boolean_power(const EClassMap& e, double s);

// eta^{boxtimes t}(x), t >= 1, x < 0.
double free_power(const EClassMap& e, double t, double x);
std::vector<double> free_power(const EClassMap& e, double t, const std::vector<double>& xs);
// The whole map eta^{boxtimes t}; its u is t * u(omega_t(x)).
EClassMap free_power_map(const EClassMap& e, double t);

struct SubordinationResult {
  RealU omega;
  double t = 1.0;
  // max |Phi_t(omega(x)) - x| / |x| over the grid
  double residual = 0.0;
  // max relative gap between omega and eta_t (x / eta_t)^{1/t}
  double closed_relation_residual = 0.0;
};

SubordinationResult subordination(const EClassMap& e, double t, const std::vector<double>& grid = eclass_grid(64));

// (eta^{boxtimes 2})^{uplus 1/2}
EClassMap bp_map(const EClassMap& e);

// (eta^{boxtimes (1+t)})^{uplus t/(1+t)}, the time-t member of the semigroup through bp_map(e).
EClassMap semigroup_at(const EClassMap& e, double t);

struct NearOnePoint {
  cplx value;
  cplx omega;
  int newton_iterations = 0;
};

// (eta^{boxtimes (1+t)})^{uplus 1/(1+t)}(z) = z exp(-u(omega_{1+t}(z))), z in the closed lower half-plane.
NearOnePoint complex_free_power_near_one(const EClassMap& e, double t, cplx z);

struct AdaptiveNearOne {
  double t = 0.0;
  int halvings = 0;
  std::vector<NearOnePoint> points;
};

// Halve t until the continuation converges at every z.
AdaptiveNearOne adaptive_near_one(const EClassMap& e, double t, const std::vector<cplx>& zs, int max_halvings = 30);

}  // namespace freelevy
