#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "freelevy/cplx.hpp"
#include "freelevy/law_types.hpp"

namespace freelevy {

struct AtomicMeasure {
  std::vector<double> loc;
  std::vector<double> weight;
};

struct GridDensity {
  std::vector<double> grid;
  std::vector<double> values;
  double mass = 0.0;
};

struct Mixed {
  AtomicMeasure atoms;
  GridDensity density;
};

using MeasureRep = std::variant<AtomicMeasure, GridDensity, Mixed, KnownLaw>;

// Validating constructors. `total` is the mass the atoms must carry.
AtomicMeasure make_atomic(std::vector<double> loc, std::vector<double> weight, double total = 1.0);
// max_mass: pass HUGE_VAL for finite (non-probability) measures such as Levy measures
GridDensity make_grid_density(std::vector<double> grid, std::vector<double> values, double max_mass = 1.0);
Mixed make_mixed(AtomicMeasure atoms, GridDensity density);

double total_mass(const MeasureRep& mu);

inline const std::vector<double> kDefaultLadder{1e-3, 5e-4, 2.5e-4};

cplx cauchy_transform(const MeasureRep& mu, cplx z);
cplx f_transform(const MeasureRep& mu, cplx z);
cplx eta_transform(const MeasureRep& mu, cplx z);

// z - F(z), written so that it stays accurate for very large and very small |z|.
cplx e_transform(const MeasureRep& mu, cplx z);

struct BoundaryValue {
  cplx value;
  double err = 0.0;
};

// Richardson extrapolation of eps -> 0 over the ladder.
BoundaryValue extrapolate_ladder(const std::function<cplx(double)>& at_eps, const std::vector<double>& ladder);

BoundaryValue boundary_F(const MeasureRep& mu, double x, const std::vector<double>& ladder = kDefaultLadder);

GridDensity stieltjes_invert(const std::function<cplx(cplx)>& G, const std::vector<double>& grid,
                             const std::vector<double>& ladder = kDefaultLadder);

double mellin_moment(const MeasureRep& mu, double gamma);

// Linear interpolation, zero outside the grid.
double interpolate(const GridDensity& g, double x);

// max |p - q| over [lo, hi] after merging both grids.
double sup_density_distance(const GridDensity& p, const GridDensity& q, double lo, double hi);

// Trapezoid mass of the density restricted to [lo, hi].
double mass_on(const GridDensity& g, double lo, double hi);

// Sample a pointwise density on a grid.
GridDensity sample_density(const std::function<double(double)>& f, const std::vector<double>& grid);

std::string grid_density_csv(const GridDensity& g);

}  // namespace freelevy
