#pragma once

#include <string>
#include <variant>

namespace freelevy {

// Stability index and asymmetry; see admissible().
struct AdmissiblePair {
  double alpha = 1.0;
  double rho = 0.5;
};

bool admissible(double alpha, double rho);
// Throws Error(Domain) naming the violated constraint.
AdmissiblePair make_admissible(double alpha, double rho);

namespace law {

struct ClassicalStable { AdmissiblePair p; };
struct FreeStable { AdmissiblePair p; };
struct BooleanStable { AdmissiblePair p; double r = 1.0; };
struct Cauchy { double beta = 0.0; double gamma = 1.0; };
struct Semicircle {};
struct DykemaHaagerup { double r = 1.0; };
struct FreeBessel { double r = 1.0; double s = 1.0; };
struct NuAlpha { double alpha = 2.0; };
struct MuAlphaBeta { double alpha = 1.0; double beta = 1.0; };
struct LambdaFreeStable { AdmissiblePair p; };
struct MarchenkoPastur {};
struct PointMass { double a = 1.0; };
// w*delta_a + (1-w)*delta_b
struct TwoPoint { double a = 2.0; double b = 0.5; double w = 0.5; };
// density (alpha/2)|x-1|^(alpha-1) on (0,2); a symmetric cusp at 1
struct Cusp { double alpha = 0.5; };

}  // namespace law

using KnownLaw = std::variant<law::ClassicalStable, law::FreeStable, law::BooleanStable, law::Cauchy,
                              law::Semicircle, law::DykemaHaagerup, law::FreeBessel, law::NuAlpha,
                              law::MuAlphaBeta, law::LambdaFreeStable, law::MarchenkoPastur, law::PointMass,
                              law::TwoPoint, law::Cusp>;

std::string describe(const KnownLaw& l);

}  // namespace freelevy
