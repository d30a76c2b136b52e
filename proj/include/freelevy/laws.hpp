#pragma once

#include <optional>

#include "freelevy/cplx.hpp"
#include "freelevy/law_types.hpp"
#include "freelevy/measures.hpp"

namespace freelevy {

double boolean_stable_density(double alpha, double rho, double r, double x);
// F of the Boolean stable law; boundary value from above on the real axis.
cplx boolean_stable_F(double alpha, double rho, double r, cplx z);

cplx free_stable_voiculescu(double alpha, double rho, cplx z);

struct ParamPoint {
  double x;
  double density;
};

// Free 1-stable law supported on (-inf, 1], parametrised by theta in (0, pi).
ParamPoint free_stable_density_parametric(double theta);
// d x / d theta for the parametrisation above.
double free_stable_param_dx(double theta);
// Density at x by inverting the parametrisation.
double f1_density(double x);

ParamPoint dh_density_parametric(double theta);
double dh_moment(double r, double n);

// Grid materialisations (theta sampled uniformly, reordered to increasing x).
GridDensity f1_grid(int n = 2048);
GridDensity dh_grid(double r = 1.0, int n = 2048);

bool is_boxtimes_id(const KnownLaw& l);
double sigma_transform_of(const KnownLaw& l, double z);
cplx v_function_of(const KnownLaw& l, cplx z);
// Derivative of v, used by Newton iterations.
cplx v_derivative_of(const KnownLaw& l, cplx z);

// S transform on (-1, 0); closed form when known, otherwise through a real inversion of eta.
double s_transform(const MeasureRep& mu, double z);
// Sigma on (-inf, 0), the same object in the variable w = z / (1 + z).
double sigma_transform(const MeasureRep& mu, double w);
double s_transform_inverse_law(const MeasureRep& mu, double z);

// Multiplicative free power of the positive Boolean stable law.
KnownLaw boolean_stable_boxtimes_power(double alpha, double t);
double boolean_stable_boxtimes_alpha(double alpha, double t);

cplx classical_stable_cf(double alpha, double rho, cplx z);

double log_cauchy_density(double beta, double gamma, double x);
double log_boolean_stable_density(double alpha, double rho, double r, double x);

// Voiculescu transform of the tangent-pushed stable law: phi_f(tan z).
cplx lambda_voiculescu(double alpha, double rho, cplx z);

// Pointwise density of a law when a closed form exists.
std::optional<double> density_of(const KnownLaw& l, double x);

cplx known_cauchy(const KnownLaw& l, cplx z);
// z - F(z) for laws where a direct form is available, otherwise z - 1/G(z).
cplx known_e_transform(const KnownLaw& l, cplx z);
// y - F(y + i0) from the closed form, for laws where one exists.
cplx known_boundary_e(const KnownLaw& l, double y);
double known_mellin(const KnownLaw& l, double gamma);
double known_mass(const KnownLaw& l);

// Cusp law: Cauchy transform at a real point approached from above.
cplx cusp_boundary_cauchy(double alpha, double y);

}  // namespace freelevy
