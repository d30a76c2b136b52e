#include <doctest.h>

#include <cmath>

#include "freelevy/dt_randmat.hpp"
#include "freelevy/error.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/linalg.hpp"

using namespace freelevy;

namespace {

SimConfig small(int n, int trials, std::uint64_t seed = 42) {
  SimConfig c;
  c.n = n;
  c.trials = trials;
  c.seed = seed;
  return c;
}

// Tr(H) and Tr(H^2) straight from the entries
std::pair<double, double> traces(const CMatrix& h) {
  double t1 = 0, t2 = 0;
  for (int i = 0; i < h.n; ++i) {
    t1 += h(i, i).real();
    for (int j = 0; j < h.n; ++j) t2 += std::norm(h(i, j));
  }
  return {t1, t2};
}

}  // namespace

TEST_CASE("per-trial seeds are SplitMix64 outputs") {
  // first output of SplitMix64 started from state 0
  CHECK(trial_seed(0, 0) == 0xE220A8397B1DCDAFULL);
  CHECK(trial_seed(0, 1) == 0x6E789E6AA1B965F4ULL);
  CHECK(trial_seed(42, 0) != trial_seed(42, 1));
  CHECK(trial_seed(42, 3) == trial_seed(42, 3));
}

TEST_CASE("entries: strictly upper triangular, variance 1/(2n) per part") {
  const int n = 60;
  double sr = 0, si = 0, mr = 0;
  long cnt = 0;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const CMatrix t = sample_upper_triangular(n, s);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (j <= i) {
          CHECK(t(i, j) == cplx(0, 0));
          continue;
        }
        sr += t(i, j).real() * t(i, j).real();
        si += t(i, j).imag() * t(i, j).imag();
        mr += t(i, j).real();
        ++cnt;
      }
  }
  // 17700 draws: the sample variance sits within a few percent of 1/(2n)
  CHECK(sr / cnt * 2 * n == doctest::Approx(1.0).epsilon(0.05));
  CHECK(si / cnt * 2 * n == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(mr / cnt) < 4 * std::sqrt(0.5 / n / cnt));
}

TEST_CASE("N = 2 by hand") {
  double mean = 0;
  const int trials = 4000;
  SimConfig c = small(2, trials, 7);
  const auto tr = sample_dt(c);
  for (int k = 0; k < trials; ++k) {
    const CMatrix t = sample_upper_triangular(2, trial_seed(7, k));
    const double a = std::norm(t(0, 1));
    REQUIRE(tr[k].eigenvalues.size() == 2);
    CHECK(std::abs(tr[k].eigenvalues[0]) < 1e-15);
    CHECK(tr[k].eigenvalues[1] == doctest::Approx(a).epsilon(1e-13));
    mean += a;
  }
  mean /= trials;
  // |t12|^2 is exponential with mean 1/2, so the standard error is 1/(2 sqrt trials)
  CHECK(std::abs(mean - 0.5) < 4 * 0.5 / std::sqrt(double(trials)));
}

TEST_CASE("eigensolver against traces") {
  for (int n : {3, 8, 33}) {
    const CMatrix h = gram(sample_upper_triangular(n, 99 + n));
    const auto ev = hermitian_eigenvalues(h);
    auto [t1, t2] = traces(h);
    double s1 = 0, s2 = 0;
    for (double e : ev) {
      s1 += e;
      s2 += e * e;
    }
    CHECK(s1 == doctest::Approx(t1).epsilon(1e-12));
    CHECK(s2 == doctest::Approx(t2).epsilon(1e-11));
    for (size_t i = 1; i < ev.size(); ++i) CHECK(ev[i] >= ev[i - 1]);
  }
  // a 2x2 Hermitian block by hand
  CMatrix m(2);
  m(0, 0) = 2;
  m(1, 1) = -1;
  m(0, 1) = cplx(1, 1);
  m(1, 0) = cplx(1, -1);
  const auto ev = hermitian_eigenvalues(m);
  // (1 -+ sqrt(9 + 8)) / 2
  CHECK(ev[0] == doctest::Approx(0.5 - 0.5 * std::sqrt(17.0)).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(0.5 + 0.5 * std::sqrt(17.0)).epsilon(1e-14));
}

TEST_CASE("Frobenius identity and positivity") {
  const auto tr = sample_dt(small(80, 4));
  for (const auto& t : tr) {
    double s = 0;
    for (double e : t.eigenvalues) {
      s += e;
      CHECK(e >= -1e-10);
    }
    CHECK(std::abs(s - t.frobenius) < 1e-8 * t.frobenius);
  }
}

TEST_CASE("seed replay and thread independence") {
  SimConfig c = small(50, 5, 1234);
  const auto a = sample_dt(c), b = sample_dt(c);
  c.jobs = 3;
  const auto p = sample_dt(c);
  SimConfig fewer = small(50, 2, 1234);
  const auto f = sample_dt(fewer);
  for (int k = 0; k < 5; ++k) {
    CHECK(a[k].eigenvalues == b[k].eigenvalues);
    CHECK(a[k].eigenvalues == p[k].eigenvalues);
    if (k < 2) CHECK(a[k].eigenvalues == f[k].eigenvalues);
  }
  const auto other = sample_dt(small(50, 1, 1235));
  CHECK(other[0].eigenvalues != a[0].eigenvalues);
}

TEST_CASE("trace moments approach the DH_1 moments") {
  SimConfig c = small(150, 6);
  const auto rows = spectral_moment_check(c);
  REQUIRE(rows.size() == 3);
  const double lim[] = {0.5, 2.0 / 3.0, 9.0 / 8.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[i].n == i + 1);
    CHECK(rows[i].theory == doctest::Approx(lim[i]).epsilon(1e-12));
    CHECK(std::abs(rows[i].empirical - lim[i]) < 0.1 * lim[i]);
    CHECK(rows[i].stderr_ >= 0.0);
  }
  // first moment has mean exactly (n - 1) / (2 n)
  CHECK(std::abs(rows[0].empirical - 149.0 / 300.0) < 5 * rows[0].stderr_ + 1e-3);
}

TEST_CASE("log spectrum against the free 1-stable density") {
  const auto tr = sample_dt(small(200, 4));
  const LogSpectrum ls = log_spectrum_vs_f1(tr);
  CHECK(ls.bins.size() == 64);
  CHECK(ls.bins.front().left == doctest::Approx(-6.0));
  CHECK(ls.bins.back().right == doctest::Approx(1.2));
  CHECK(ls.total == 800);
  CHECK(ls.max_log_eigenvalue < 1.1);
  CHECK(ls.sup_distance < 0.1);
  // the theory column is the bin average of f_1; Simpson on 64 cells as the check
  for (const auto& b : ls.bins) {
    const int m = 64;
    const double h = (b.right - b.left) / m;
    double s = f1_density(b.left) + f1_density(b.right);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4 : 2) * f1_density(b.left + i * h);
    CHECK(b.theory == doctest::Approx(s * h / 3 / (b.right - b.left)).epsilon(1e-4));
  }
  // the first column of T vanishes, so every trial has an exact zero eigenvalue
  CHECK(ls.dropped >= 4);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate(small(1, 1)), Error);
  CHECK_THROWS_AS(validate(small(5000, 1)), Error);
  CHECK_THROWS_AS(validate(small(10, 0)), Error);
  SimConfig b = small(1000, 60);
  CHECK_THROWS_AS(validate(b), Error);
  SimConfig o = small(10, 1);
  o.moment_orders = {1, 0};
  CHECK_THROWS_AS(validate(o), Error);
  SimConfig j = small(10, 1);
  j.jobs = 0;
  CHECK_THROWS_AS(validate(j), Error);
  CHECK_NOTHROW(validate(small(400, 10)));
}
