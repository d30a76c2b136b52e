#include <doctest.h>

#include <cmath>

#include "freelevy/error.hpp"
#include "freelevy/free_small_time.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/quadrature.hpp"

using namespace freelevy;

namespace {

double mp_density(double x) { return x > 0 && x < 4 ? std::sqrt((4 - x) / x) / (2 * kPi) : 0.0; }

// gamma-moment of MP^{boxtimes T}: Fuss-Catalan numbers continued in gamma
double mp_power_moment(double g, double T) {
  return std::exp(std::lgamma(g * (1 + T) + 1) - std::lgamma(g * T + 2) - std::lgamma(1 + g));
}

const KnownLaw kB12 = law::BooleanStable{{0.5, 1.0}, 1.0};

}  // namespace

TEST_CASE("exact free powers of b_{1/2}") {
  // b_{1/2}^{boxtimes 1/4} = b_{0.8}
  const auto grid = linspace(0.5, 2.0, 31);
  const GridDensity ex = boolean_stable_boxtimes_density(0.5, 0.25, 1.0, grid);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(ex.values[i] == doctest::Approx(boolean_stable_density(0.8, 1.0, 1.0, grid[i])).epsilon(1e-12));
  const GridDensity num = free_power_density(kB12, 0.25, 1.0, grid);
  CHECK(sup_density_distance(num, ex, 0.5, 2.0) < 1e-3);
}

TEST_CASE("continuation recovers MP at time one") {
  const auto grid = linspace(0.2, 3.8, 37);
  const GridDensity g = free_power_density(law::MarchenkoPastur{}, 1.0, 1.0, grid);
  for (size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(g.values[i] - mp_density(grid[i])) < 1e-3);
}

TEST_CASE("MP powers: mass and Mellin moments") {
  for (double T : {0.5, 1.0}) {
    // support of MP^{boxtimes T} ends at (1+T)^{1+T} / T^T
    const double top = std::pow(1 + T, 1 + T) / std::pow(T, T);
    // x = top * u^2 removes the inverse square-root type blow-up at 0
    auto dens = [&](double u) { return free_power_density_at(law::MarchenkoPastur{}, T, 1.0, top * u * u) * 2 * top * u; };
    const double lo = std::sqrt(0.01 / top);
    const double hi = std::min(1.0, std::sqrt(10 / top));
    const double mass = integrate_gl(dens, lo, hi, 12, 20);
    // frozen from an independent mpmath quadrature of the angle parametrisation of MP^{boxtimes T}; T = 1 is the MP density itself
    CHECK(mass == doctest::Approx(T == 1.0 ? 0.936364558543167 : 0.980510293891163).epsilon(1e-6));
    for (double g : {1.0, 2.0}) {
      auto mom = [&](double u) { return std::pow(top * u * u, g) * dens(u); };
      const double m = integrate_gl(mom, 1e-9, 1.0, 12, 20);
      CHECK(m == doctest::Approx(mp_power_moment(g, T)).epsilon(1e-3));
    }
  }
}

TEST_CASE("free log-Cauchy parameters") {
  for (double a : {0.25, 0.5, 0.75}) {
    auto [b, g] = free_log_cauchy_parameters(law::BooleanStable{{a, 1.0}, 1.0});
    CHECK(std::abs(b) < 1e-6);
    CHECK(g == doctest::Approx((1 - a) * kPi / a).epsilon(1e-6));
  }
  try {
    free_log_cauchy_parameters(law::MarchenkoPastur{});
    FAIL("expected a hypothesis error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Hypothesis);
  }
}

TEST_CASE("free log-Cauchy limit table") {
  const LimitTable tab = log_cauchy_free_limit_check(kB12, {1e-1, 1e-2, 1e-3}, 0.3, 3.0, 128);
  CHECK(tab.gamma == doctest::Approx(kPi));
  CHECK(tab.decreasing);
  CHECK(tab.rows.back().sup_distance < 5e-2);
}

TEST_CASE("Tucci limit of MP is uniform") {
  const TucciLimit lim = tucci_limit(MeasureRep{KnownLaw{law::MarchenkoPastur{}}});
  CHECK_FALSE(lim.degenerate);
  CHECK(lim.levels.size() == 1024);
  for (size_t i = 0; i < lim.levels.size(); ++i) CHECK(lim.quantiles[i] == doctest::Approx(lim.levels[i]).epsilon(1e-12));
  CHECK(std::abs(lim.support_lo) < 1e-9);
  CHECK(lim.support_hi == doctest::Approx(1.0).epsilon(1e-9));
  for (double q : linspace(0.01, 0.99, 50)) {
    CHECK(lim.cdf(q) == doctest::Approx(q).epsilon(1e-9));
    CHECK(interpolate(lim.density, q) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("Tucci limit of a two-point law") {
  const auto tp = make_atomic({0.5, 2.0}, {0.5, 0.5});
  const TucciLimit lim = tucci_limit(tp);
  // support ((int 1/x)^{-1}, int x)
  CHECK(lim.support_lo == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(lim.support_hi == doctest::Approx(1.25).epsilon(1e-6));
  // quantile q at level x means eta(w / q) = w with w = (x - 1) / x; eta by hand
  for (size_t i = 10; i < lim.levels.size(); i += 101) {
    const double x = lim.levels[i], q = lim.quantiles[i], w = (x - 1) / x;
    const double y = w / q, z = 1 / y;
    const double E = (0.25 / (z - 0.5) + 1.0 / (z - 2)) / (0.5 / (z - 0.5) + 0.5 / (z - 2));
    CHECK(y * E == doctest::Approx(w).epsilon(1e-9));
  }
  for (size_t i = 1; i < lim.quantiles.size(); ++i) CHECK(lim.quantiles[i] >= lim.quantiles[i - 1]);
}

TEST_CASE("Tucci limit of a point mass is itself") {
  const TucciLimit lim = tucci_limit(MeasureRep{KnownLaw{law::PointMass{2.0}}});
  CHECK(lim.degenerate);
  CHECK(lim.support_lo == doctest::Approx(2.0));
  CHECK(lim.support_hi == doctest::Approx(2.0));
  CHECK(lim.cdf(1.9) == 0.0);
  CHECK(lim.cdf(2.1) == 1.0);
}

TEST_CASE("Tucci convergence for MP moves towards the limit") {
  const LimitTable tab = tucci_convergence_check(law::MarchenkoPastur{}, {8, 16, 32, 64});
  REQUIRE(tab.rows.size() == 4);
  CHECK(tab.rows.front().t == 8);
  CHECK(tab.decreasing);
  // exact sup |density - 1| on [0.05, 0.95], frozen from the angle parametrisation in mpmath
  const double exact[] = {0.432328, 0.338495, 0.253666, 0.179235};
  for (size_t i = 0; i < 4; ++i) CHECK(std::abs(tab.rows[i].sup_distance - exact[i]) < 5e-3);
}
