#pragma once

#include <vector>

#include "freelevy/measures.hpp"

namespace freelevy {

// Density of (mu^{uplus t})^{power} on [k_lo, k_hi]; mu lives on [0, inf),
// the Boolean power is the multiplicative one and `power` pushes forward by x -> x^power.
struct BooleanPowerDensityRequest {
  MeasureRep mu;
  double t = 0.5;
  double power = 1.0;
  double k_lo = 0.5;
  double k_hi = 2.0;
  int grid_size = 512;
};

// 1 / (z - (z - F(z))^t)
cplx boolean_power_cauchy(const MeasureRep& mu, double t, cplx z);

double boolean_power_density_at(const MeasureRep& mu, double t, double power, double x);
GridDensity boolean_power_density(const BooleanPowerDensityRequest& req);

// Additive Boolean power on R: F_t = z - t (z - F).
cplx additive_boolean_power_cauchy(const MeasureRep& mu, double t, cplx z);
// Density at a real point from the exact boundary value of F.
double additive_boolean_power_density(const MeasureRep& mu, double t, double x);

struct LimitRow {
  double t = 0.0;
  double sup_distance = 0.0;
};

struct LimitTable {
  std::vector<LimitRow> rows;
  // parameters of the limit law
  double beta = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double r = 0.0;
  // distances strictly decrease along the sorted rows
  bool decreasing = false;
};

// Sorts rows by t (decreasing unless t_ascending) and sets `decreasing`.
void finish_table(LimitTable& tab, bool t_ascending = false);

// beta - i gamma = log(1 - F(1) - i0); throws Hypothesis unless F(1) in C+ or (1, inf).
std::pair<double, double> log_cauchy_parameters(const MeasureRep& mu);

LimitTable log_cauchy_limit_check(const MeasureRep& mu, const std::vector<double>& t_list, double k_lo, double k_hi,
                                  int grid_size = 512);

// Cusp input (alpha/2)|x-1|^(alpha-1) on (0,2), power t^(-1/alpha), distances over both intervals.
LimitTable log_boolean_stable_limit_check(double alpha, double kp_lo, double kp_hi, double km_lo, double km_hi,
                                          const std::vector<double>& t_list, int grid_size = 512);

}  // namespace freelevy
