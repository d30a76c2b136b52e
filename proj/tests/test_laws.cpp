#include <doctest.h>

#include <cmath>
#include <random>

#include "freelevy/error.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/measures.hpp"
#include "freelevy/quadrature.hpp"

using namespace freelevy;

namespace {

// density from F(x + i0) = x + r e^{i a rho pi} (x + i0)^{1-a}, written out by hand
double boolean_stable_oracle(double a, double rho, double r, double x) {
  const double arg = x > 0 ? 0.0 : kPi;
  const cplx zp = std::polar(std::pow(std::abs(x), 1 - a), (1 - a) * arg);
  const cplx F = x + r * std::polar(1.0, a * rho * kPi) * zp;
  return -std::imag(1.0 / F) / kPi;
}

}  // namespace

TEST_CASE("admissible pairs") {
  CHECK(admissible(0.5, 0.0));
  CHECK(admissible(1.0, 1.0));
  CHECK(admissible(1.5, 0.5));
  CHECK(admissible(1.5, 1.0 / 3.0));
  CHECK_FALSE(admissible(1.5, 0.9));
  CHECK_FALSE(admissible(2.5, 0.5));
  CHECK_FALSE(admissible(0.0, 0.5));
  CHECK_THROWS_AS(make_admissible(1.5, 0.9), Error);
}

TEST_CASE("Boolean stable densities") {
  CHECK(boolean_stable_density(0.5, 1.0, 1.0, 1.0) == doctest::Approx(1 / (2 * kPi)).epsilon(1e-14));
  for (double x : {-0.1, -1.0, -30.0}) CHECK(boolean_stable_density(0.5, 1.0, 1.0, x) == doctest::Approx(0.0));
  for (double x : {0.3, 1.0, 7.0})
    CHECK(boolean_stable_density(0.5, 1.0, 2.0, x) ==
          doctest::Approx(0.25 * boolean_stable_density(0.5, 1.0, 1.0, x / 4)).epsilon(1e-13));
  CHECK_THROWS_AS(boolean_stable_density(0.5, 1.0, 1.0, 0.0), Error);
  const std::vector<std::pair<double, double>> pairs{{0.3, 0.2}, {0.5, 1.0}, {0.8, 0.5}, {1.0, 0.3}, {1.4, 0.4}, {2.0, 0.5}};
  for (auto [a, rho] : pairs)
    for (double r : {0.5, 1.0, 3.0})
      for (double x : {-4.0, -0.7, -0.01, 0.02, 0.9, 5.0})
        CHECK(boolean_stable_density(a, rho, r, x) == doctest::Approx(boolean_stable_oracle(a, rho, r, x)).epsilon(1e-12));
}

TEST_CASE("Boolean stable densities integrate to one") {
  for (auto [a, rho] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 0.5}, {1.5, 0.5}}) {
    // x = (v / (1 - v))^2 on each half line: smooth at both the x^{-1/2} blow-up at 0 and the x^{-1-a} tail
    auto f = [&](double v, double sgn) {
      const double w = v / (1 - v), x = sgn * w * w;
      if (x == 0.0 || v >= 1.0) return 0.0;
      return boolean_stable_density(a, rho, 1.0, x) * 2 * w / ((1 - v) * (1 - v));
    };
    const double m = integrate_gl([&](double v) { return f(v, -1); }, 0, 1, 200, 20) +
                     integrate_gl([&](double v) { return f(v, 1); }, 0, 1, 200, 20);
    CHECK(m == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("free stable Voiculescu transform") {
  for (cplx z : {cplx(0, 1), cplx(1, 2), cplx(-2, 0.5)}) {
    CHECK(std::abs(free_stable_voiculescu(2.0, 0.5, z) - 1.0 / z) < 1e-13);
    // alpha = 1 carries -i rho pi - (1 - 2 rho) log z; rho = 1/2 is the Cauchy law of scale pi/2
    CHECK(std::abs(free_stable_voiculescu(1.0, 0.5, z) - cplx(0, -kPi / 2)) < 1e-13);
  }
  // F inverts z -> z + phi(z): z = F(z) + phi(F(z))
  for (auto [a, rho] : std::vector<std::pair<double, double>>{{1.5, 0.5}, {1.5, 0.4}, {0.7, 0.5}})
    for (cplx z : {cplx(0.3, 1), cplx(-1, 0.5), cplx(2, 3)}) {
      const cplx F = 1.0 / known_cauchy(law::FreeStable{{a, rho}}, z);
      CHECK(std::abs(F + free_stable_voiculescu(a, rho, F) - z) < 1e-8);
    }
}

TEST_CASE("free 1-stable parametrisation") {
  const ParamPoint p = free_stable_density_parametric(kPi / 2);
  CHECK(p.x == doctest::Approx(std::log(2 / kPi)).epsilon(1e-13));
  CHECK(p.x == doctest::Approx(-0.4516).epsilon(1e-4));
  CHECK(p.density == doctest::Approx(2 / (kPi * kPi)).epsilon(1e-13));
  const ParamPoint lo = free_stable_density_parametric(1e-6);
  CHECK(lo.x < 1.0);
  CHECK(lo.x == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lo.density < 1e-5);
  const ParamPoint hi = free_stable_density_parametric(kPi - 1e-6);
  CHECK(hi.x < -1e5);
  CHECK(hi.density < 1e-9);
  CHECK(f1_density(1.5) == 0.0);
  CHECK(f1_density(p.x) == doctest::Approx(p.density).epsilon(1e-9));
}

TEST_CASE("free 1-stable density has unit mass and DH_1 moments") {
  // int q(th) x'(th) dth over (0, pi), and E[e^{n X}] = n^n / (n+1)!
  auto mass = [&](double th) { return free_stable_density_parametric(th).density * std::abs(free_stable_param_dx(th)); };
  CHECK(integrate_gl(mass, 0, kPi, 64, 20) == doctest::Approx(1.0).epsilon(1e-10));
  for (int n : {1, 2, 3}) {
    auto mom = [&](double th) {
      const ParamPoint q = free_stable_density_parametric(th);
      return std::exp(n * q.x) * q.density * std::abs(free_stable_param_dx(th));
    };
    const double expect = std::pow(n, n) / std::tgamma(n + 2.0);
    CHECK(integrate_gl(mom, 0, kPi, 64, 20) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("DH parametrisation and moments") {
  const ParamPoint p = dh_density_parametric(kPi / 2);
  CHECK(p.x == doctest::Approx(2 / kPi).epsilon(1e-13));
  CHECK(p.density == doctest::Approx(1 / kPi).epsilon(1e-13));
  CHECK(dh_density_parametric(1e-7).x == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
  CHECK(dh_moment(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dh_moment(1, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(dh_moment(1, 3) == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
  CHECK(dh_moment(2, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  for (double r : {0.5, 1.0, 2.0}) CHECK(dh_moment(r, 0) == doctest::Approx(1.0).epsilon(1e-14));
  const GridDensity g = dh_grid(1.0);
  // the grid is cut off at its left end; compare with the exact mass above it
  const double lf = std::log(g.grid.front());
  auto above = [&](double th) {
    const ParamPoint q = free_stable_density_parametric(th);
    return q.x > lf ? q.density * std::abs(free_stable_param_dx(th)) : 0.0;
  };
  CHECK(g.mass == doctest::Approx(integrate_gl(above, 0, kPi, 400, 20)).epsilon(2e-3));
  CHECK(g.mass == doctest::Approx(trapezoid(g.grid, g.values)).epsilon(1e-12));
  CHECK(g.grid.back() <= std::exp(1.0) + 1e-12);
}

TEST_CASE("Sigma and v for boxtimes-ID laws") {
  const KnownLaw mp = law::MarchenkoPastur{};
  CHECK(sigma_transform_of(mp, -1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(v_function_of(mp, cplx(-1, 0)).real() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  for (double z : {-0.1, -1.0, -7.0}) {
    CHECK(sigma_transform_of(law::FreeBessel{1.0, 1.0}, z) == doctest::Approx(1 - z).epsilon(1e-14));
    // generic route: eta of delta_2 is 2x, so Sigma = 1/2
    CHECK(sigma_transform(make_atomic({2.0}, {1.0}), z) == doctest::Approx(0.5).epsilon(1e-10));
    // (delta_1 + delta_3)/2: eta(x) = x E(1/x) with E = sum w a / (z - a) over sum w / (z - a)
    const auto tp = make_atomic({1.0, 3.0}, {0.5, 0.5});
    const double x = sigma_transform(tp, z) * z, y = 1.0 / x;
    const double e = (0.5 / (y - 1) + 1.5 / (y - 3)) / (0.5 / (y - 1) + 0.5 / (y - 3));
    CHECK(x * e == doctest::Approx(z).epsilon(1e-10));
  }
  // S(z) = Sigma(z / (1 + z))
  for (double z : {-0.9, -0.5, -0.1}) CHECK(s_transform(MeasureRep{mp}, z) == doctest::Approx(1 / (1 + z)).epsilon(1e-13));
  CHECK_THROWS_AS(sigma_transform_of(law::FreeBessel{0.5, 2.0}, -1.0), Error);
  CHECK_THROWS_AS(sigma_transform_of(mp, 0.5), Error);
}

TEST_CASE("boxtimes-ID flags") {
  CHECK(is_boxtimes_id(law::FreeBessel{0.5, 1.0}));
  CHECK(is_boxtimes_id(law::FreeBessel{1.0, 2.0}));
  CHECK(is_boxtimes_id(law::FreeBessel{3.0, 1.5}));
  CHECK_FALSE(is_boxtimes_id(law::FreeBessel{0.5, 2.0}));
  CHECK(is_boxtimes_id(law::MarchenkoPastur{}));
  CHECK_FALSE(is_boxtimes_id(law::Semicircle{}));
}

TEST_CASE("S of the inverted law") {
  const MeasureRep mp{KnownLaw{law::MarchenkoPastur{}}};
  for (double z : {-0.8, -0.3}) CHECK(s_transform_inverse_law(mp, z) == doctest::Approx(-z).epsilon(1e-13));
  const MeasureRep d{KnownLaw{law::PointMass{3.0}}};
  CHECK(s_transform(d, -0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(s_transform_inverse_law(d, -0.5) == doctest::Approx(3.0).epsilon(1e-12));
  const MeasureRep m12{KnownLaw{law::MuAlphaBeta{0.5, 2.0}}}, m21{KnownLaw{law::MuAlphaBeta{2.0, 0.5}}};
  for (double z : {-0.7, -0.2}) CHECK(s_transform_inverse_law(m12, z) == doctest::Approx(s_transform(m21, z)).epsilon(1e-12));
}

TEST_CASE("multiplicative free powers of the positive Boolean stable law") {
  CHECK(boolean_stable_boxtimes_alpha(0.3, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
  // eta(x) = -(-x)^a on the negative axis, so Sigma(w) = (-w)^{1/a - 1} and powers multiply the exponent
  for (double a : {0.25, 0.5, 0.8})
    for (double t : {0.1, 0.5, 2.0, 5.0}) {
      const double e = (1 / a - 1) * t;
      CHECK(boolean_stable_boxtimes_alpha(a, t) == doctest::Approx(1 / (1 + e)).epsilon(1e-14));
    }
  CHECK(boolean_stable_boxtimes_alpha(0.5, 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(boolean_stable_boxtimes_alpha(0.5, 1e-9) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(boolean_stable_boxtimes_alpha(0.5, 1e9) < 1e-8);
  // the eta form itself, evaluated through the transform chain
  const MeasureRep b{KnownLaw{law::BooleanStable{{0.4, 1.0}, 1.0}}};
  for (double x : {-0.01, -1.0, -9.0})
    CHECK(eta_transform(b, cplx(x, 0)).real() == doctest::Approx(-std::pow(-x, 0.4)).epsilon(1e-12));
  for (double w : {-0.3, -3.0})
    CHECK(sigma_transform_of(boolean_stable_boxtimes_power(0.4, 2.5), w) ==
          doctest::Approx(std::pow(sigma_transform_of(law::BooleanStable{{0.4, 1.0}, 1.0}, w), 2.5)).epsilon(1e-12));
}

TEST_CASE("classical stable characteristic function") {
  CHECK(std::abs(classical_stable_cf(2.0, 0.5, cplx(0, -1)) - std::exp(-0.5)) < 1e-14);
  CHECK(std::abs(classical_stable_cf(1.0, 0.5, cplx(0, -1)) - std::exp(-kPi / 2)) < 1e-14);
  for (auto [a, rho] : std::vector<std::pair<double, double>>{{0.5, 0.0}, {0.5, 1.0}, {1.0, 0.2}, {1.5, 0.6}, {2.0, 0.5}})
    for (double y : {0.01, 0.5, 3.0}) CHECK(std::abs(classical_stable_cf(a, rho, cplx(0, -y))) <= 1.0 + 1e-14);
}

TEST_CASE("log-Cauchy and log Boolean stable densities") {
  CHECK(log_cauchy_density(0, kPi, 1.0) == doctest::Approx(1 / (kPi * kPi)).epsilon(1e-14));
  // near 0 the density itself blows up like 1 / (x log^2 x); the log-scale density x f(x) vanishes
  double prev = HUGE_VAL;
  for (double x : {1e-4, 1e-8, 1e-16, 1e-100}) {
    const double d = log_cauchy_density(0, kPi, x);
    CHECK(d * x * std::log(x) * std::log(x) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(x * d < prev);
    prev = x * d;
  }
  // mass on [e^-L, e^L] is (2/pi) atan(L / gamma) for beta = 0
  const double L = 40;
  auto f = [](double y) { return log_cauchy_density(0, kPi, std::exp(y)) * std::exp(y); };
  CHECK(integrate_gl(f, -L, L, 200, 20) == doctest::Approx(2 / kPi * std::atan(L / kPi)).epsilon(1e-12));
  CHECK(log_boolean_stable_density(0.5, 1.0, 1.0, std::exp(1.0)) ==
        doctest::Approx(std::exp(-1.0) / (2 * kPi)).epsilon(1e-13));
  for (double x : {0.1, 0.5, 0.9}) {
    const double d = log_boolean_stable_density(0.5, 1.0, 1.0, x);
    CHECK(d == 0.0);
    CHECK(log_boolean_stable_density(0.5, 0.5, 1.0, x) > 0.0);
  }
  CHECK_THROWS_AS(log_cauchy_density(0, kPi, -1.0), Error);
}

TEST_CASE("lambda law Voiculescu transform is phi_f composed with tan") {
  for (auto [a, rho] : std::vector<std::pair<double, double>>{{2.0, 0.5}, {1.5, 0.6}, {1.0, 0.5}})
    for (cplx z : {cplx(0.2, 0.5), cplx(-1, 1)})
      CHECK(std::abs(lambda_voiculescu(a, rho, z) - free_stable_voiculescu(a, rho, std::tan(z))) < 1e-12);
}

TEST_CASE("closed-form densities have unit mass") {
  CHECK(integrate_gl([](double x) { return *density_of(law::Cusp{0.5}, x); }, 0, 2, 64, 20) ==
        doctest::Approx(1.0).epsilon(5e-3));
  CHECK(known_mass(law::Cusp{0.5}) == doctest::Approx(1.0));
  // semicircle through x = 2 sin(u)
  auto sc = [](double u) { return *density_of(law::Semicircle{}, 2 * std::sin(u)) * 2 * std::cos(u); };
  CHECK(integrate_gl(sc, -kPi / 2, kPi / 2, 32, 20) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(describe(law::MarchenkoPastur{}).size() > 0);
}
