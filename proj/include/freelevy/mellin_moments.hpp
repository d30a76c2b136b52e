#pragma once

#include <vector>

#include "freelevy/measures.hpp"
#include "freelevy/specfun.hpp"

namespace freelevy {

struct MomentTable {
  std::vector<double> gammas;
  double t = 0.0;
  std::vector<double> values;
  std::vector<double> limit_values;
};

// int x^gamma dmu through the S transform on (-1, 0), gamma in (-1, 1) \ {0}.
double hm_mellin(const MeasureRep& mu, double gamma);

// gamma-moment of D_{t^r}((pi(r,s)^{boxtimes t})^{1/t}), s > 1.
double free_bessel_moment_closed_form(double r, double s, double gamma, double t, const SeriesControl& ctl = {});
// Same for s = 1.
double free_bessel_moment_s1(double r, double gamma, double t);

struct SeriesResult {
  double value = 0.0;
  int terms = 0;
  // bound on the neglected tail at the point of truncation
  double tail_bound = 0.0;
};

// (-gamma)-Mellin moment of (nu_alpha^{boxtimes t})^xi.
SeriesResult nu_alpha_series(double alpha, double gamma, double t, double xi, const SeriesControl& ctl = {});
// Smallest N with D^N / N! < rel_tol for D = 2^(alpha-1) e^(alpha-1) gamma^alpha, plus the 20-term quiet window.
int nu_alpha_term_bound(double alpha, double gamma, double rel_tol);

// E[exp(-gamma X)] for X free alpha-stable, alpha in (1, 2].
double laplace_free_stable(double alpha, double gamma, const SeriesControl& ctl = {});

// Multi-index version for k <= 3 laws; alphas strictly decreasing in (1, 2].
SeriesResult multi_law_series(const std::vector<double>& alphas, const std::vector<double>& ps, double gamma, double t,
                              double xi, const SeriesControl& ctl = {});

MomentTable free_bessel_table(double r, double s, const std::vector<double>& gammas, double t);
MomentTable nu_alpha_table(double alpha, const std::vector<double>& gammas, double t);

}  // namespace freelevy
