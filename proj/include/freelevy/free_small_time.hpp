#pragma once

#include <vector>

#include "freelevy/boolean_small_time.hpp"
#include "freelevy/law_types.hpp"
#include "freelevy/measures.hpp"

namespace freelevy {

// Density of (mu^{boxtimes t})^{power} at x for a boxtimes-ID law, through the
// continuation of omega_{1+t} and a Stieltjes inversion along `ladder`.
double free_power_density_at(const KnownLaw& law, double t, double power, double x,
                             const std::vector<double>& ladder = kDefaultLadder);
GridDensity free_power_density(const KnownLaw& law, double t, double power, double k_lo, double k_hi,
                               int grid_size = 512, const std::vector<double>& ladder = kDefaultLadder);
GridDensity free_power_density(const KnownLaw& law, double t, double power, const std::vector<double>& grid,
                               const std::vector<double>& ladder = kDefaultLadder);

// Same object for the positive Boolean stable law through its exact power.
GridDensity boolean_stable_boxtimes_density(double alpha, double t, double power, const std::vector<double>& grid);

// -beta + i gamma = v(1 - i0); throws Hypothesis unless it is finite with gamma > 0.
std::pair<double, double> free_log_cauchy_parameters(const KnownLaw& law);

LimitTable log_cauchy_free_limit_check(const KnownLaw& law, const std::vector<double>& t_list, double k_lo,
                                       double k_hi, int grid_size = 512);

struct TucciLimit {
  bool degenerate = false;
  double atom = 0.0;
  // CDF levels x and the matching quantiles 1/S(x-1)
  std::vector<double> levels;
  std::vector<double> quantiles;
  GridDensity density;
  double support_lo = 0.0;
  double support_hi = 0.0;
  double cdf(double q) const;
};

TucciLimit tucci_limit(const MeasureRep& mu, int levels = 1024);

// Distances between (mu^{boxtimes t})^{1/t} and the limit on [k_lo, k_hi], rows sorted by increasing t.
LimitTable tucci_convergence_check(const KnownLaw& law, const std::vector<double>& t_list, double k_lo = 0.05,
                                   double k_hi = 0.95, int grid_size = 512);

}  // namespace freelevy
