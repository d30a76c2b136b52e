#pragma once

#include <optional>
#include <vector>

#include "freelevy/boolean_small_time.hpp"
#include "freelevy/measures.hpp"

namespace freelevy {

// m_n = int zeta^n, n = 0..N; zeta = exp(-i x) for wrapped measures.
struct CircleMeasure {
  std::vector<cplx> moments;
  // density on [-pi, pi) in the x coordinate, when it was built by summing translates
  std::optional<GridDensity> wrapped;
  // translates used on each side (0 when moments came in closed form)
  int translates = 0;
};

CircleMeasure wrap(const MeasureRep& mu, int n_terms = 256);

// eta on the unit disc from the moment series; throws Truncation when the
// tail bound |z|^{N+1} / (1 - |z|) exceeds tol.
cplx circle_eta(const CircleMeasure& m, cplx z, double tol = 1e-6);

// max |exp(i F(z)) - eta_{W(mu)}(exp(i z))| over the samples; throws Class
// when F(z + 2 pi) != F(z) + 2 pi.
double wrap_homomorphism_check(const MeasureRep& mu, const std::vector<cplx>& samples, int n_terms = 256);

struct SeriesIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};

// sum_n (x - 2 pi n)^-2 with |n| <= terms plus an integral tail, against 1 / (2 (1 - cos x)).
SeriesIdentity series_identity_check(double x, int terms = 10000);

// Measures on the circle in the angle coordinate theta in [0, 2 pi), zeta = exp(-i theta).
struct CircleSigma {
  AtomicMeasure atoms;
  GridDensity density;  // grid inside [0, 2 pi]; may be empty
};

struct WrappedPair {
  cplx gamma{1.0, 0.0};
  CircleSigma sigma;
};

// tau = finite part (atoms plus a compactly supported density on R)
//     + (2 / (1 + x^2)) times the 2 pi-periodisation of `periodic`.
struct AdditivePair {
  double xi = 0.0;
  AtomicMeasure atoms;
  GridDensity density;
  std::optional<CircleSigma> periodic;
  double tau_density(double x) const;
};

WrappedPair additive_to_mult_pair(const AdditivePair& p, int translates = 10000);
// arg gamma is taken as the principal value plus 2 pi * arg_branch.
AdditivePair mult_to_additive_pair(cplx gamma, const CircleSigma& sigma, int arg_branch);

// Max gap between two pairs: |gamma1 - gamma2|, atom weights and density values on the first grid.
double pair_distance(const WrappedPair& a, const WrappedPair& b);

double unitary_bm_moment(double t, int m);

struct UnitaryRow {
  double t = 0.0;
  int n = 0;
  double value = 0.0;
  double limit = 0.0;
  double abs_err = 0.0;
};

struct UnitaryTable {
  std::vector<UnitaryRow> rows;
  // for every n, abs_err shrinks as t decreases
  bool decreasing = false;
};

UnitaryTable unitary_bm_limit_check(const std::vector<double>& t_list, int n_max = 3);

// Voiculescu transform of D_a(lambda^{boxplus t}) (shifted when alpha = 1).
cplx lambda_scaled_voiculescu(double alpha, double rho, double t, cplx z);

LimitTable lambda_voiculescu_convergence(double alpha, double rho, const std::vector<double>& t_list,
                                         const std::vector<cplx>& samples);

}  // namespace freelevy
