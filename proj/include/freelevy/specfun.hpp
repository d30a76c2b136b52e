#pragma once

namespace freelevy {

struct SeriesControl {
  int max_terms = 10000;
  double rel_tol = 1e-14;
};

// Throws Error(Domain) when ctl violates max_terms >= 64, 0 < rel_tol <= 1e-10.
void validate(const SeriesControl& ctl);

double log_gamma(double x);
double gamma_fn(double x);

// Sign-aware Gamma for negative non-integer arguments.
double gamma_signed(double x);

double beta(double p, double q);

double hyp2f1(double a, double b, double c, double z, const SeriesControl& ctl = {});

// Raw Gauss series, no transformation; requires |z| < 1.
double hyp2f1_series(double a, double b, double c, double z, const SeriesControl& ctl = {});

double bessel_j1(double x);
double bessel_i1(double x);

}  // namespace freelevy
