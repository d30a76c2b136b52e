#pragma once

#include <functional>

#include "freelevy/cplx.hpp"

namespace freelevy {

// u on (-inf, 0)
using RealU = std::function<double(double)>;
// u on the region (iC+) u C-, value plus derivative written to *du when non-null
using ComplexU = std::function<cplx(cplx w, cplx* du)>;

// Solve w * exp(t * u(w)) = x for w < 0, given x < 0 and t >= 0.
double invert_phi_real(const RealU& u, double t, double x);

struct RootTrack {
  cplx omega;
  int steps = 0;
  int newton_iterations = 0;
};

// Solve omega * exp(t * u(omega)) = c with c in the closed lower half-plane, c != 0.
// The logarithm is carried continuously from the negative axis, where the root is real.
RootTrack track_root(const ComplexU& u, double t, cplx c);

}  // namespace freelevy
