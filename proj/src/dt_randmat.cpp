#include "freelevy/dt_randmat.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "freelevy/error.hpp"
#include "freelevy/kernels.hpp"
#include "freelevy/laws.hpp"

namespace freelevy {

void validate(const SimConfig& cfg) {
  if (cfg.n < 2 || cfg.n > 4096) throw Error(ErrorKind::Domain, "matrix size must be in [2, 4096]");
  if (cfg.trials < 1) throw Error(ErrorKind::Domain, "need at least one trial");
  if (double(cfg.trials) * cfg.n * cfg.n > cfg.budget) throw Error(ErrorKind::Domain, "trials * n^2 exceeds the budget");
  for (int k : cfg.moment_orders)
    if (k < 1) throw Error(ErrorKind::Domain, "moment orders must be positive");
  if (cfg.jobs < 1) throw Error(ErrorKind::Domain, "jobs must be >= 1");
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CMatrix sample_upper_triangular(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  // (0, 1], never 0 so the log is finite
  auto uniform = [&] { return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53; };
  const double sd = std::sqrt(0.5 / n);
  CMatrix t(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double r = std::sqrt(-2.0 * std::log(uniform()));
      const double a = 2.0 * M_PI * uniform();
      t(i, j) = cplx(sd * r * std::cos(a), sd * r * std::sin(a));
    }
  return t;
}

namespace {

DtTrial one_trial(int n, std::uint64_t seed) {
  const CMatrix t = sample_upper_triangular(n, seed);
  DtTrial out;
  for (const cplx& v : t.a) out.frobenius += std::norm(v);
  out.eigenvalues = hermitian_eigenvalues(gram(t));
  for (double e : out.eigenvalues)
    if (e < -1e-10) throw Error(ErrorKind::Numeric, "T^* T produced a negative eigenvalue");
  return out;
}

}  // namespace

std::vector<DtTrial> sample_dt(const SimConfig& cfg) {
  validate(cfg);
  std::vector<DtTrial> out(cfg.trials);
  const int jobs = std::min(cfg.jobs, cfg.trials);
  if (jobs <= 1) {
    for (int k = 0; k < cfg.trials; ++k) out[k] = one_trial(cfg.n, trial_seed(cfg.seed, k));
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(jobs);
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int k = w; k < cfg.trials; k += jobs) out[k] = one_trial(cfg.n, trial_seed(cfg.seed, k));
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<MomentRow> spectral_moment_check(const SimConfig& cfg, const std::vector<DtTrial>& trials) {
  if (trials.empty()) throw Error(ErrorKind::Domain, "no trials");
  int kmax = 0;
  for (int k : cfg.moment_orders) kmax = std::max(kmax, k);
  // per-trial normalised traces
  std::vector<std::vector<double>> per(trials.size(), std::vector<double>(kmax));
  for (size_t i = 0; i < trials.size(); ++i) {
    const auto& ev = trials[i].eigenvalues;
    kernels::power_sums(ev.data(), ev.size(), kmax, per[i].data());
    for (auto& v : per[i]) v /= double(ev.size());
  }
  std::vector<MomentRow> rows;
  const double m = double(trials.size());
  for (int k : cfg.moment_orders) {
    double s = 0.0, s2 = 0.0;
    for (const auto& p : per) {
      s += p[k - 1];
      s2 += p[k - 1] * p[k - 1];
    }
    const double mean = s / m;
    const double var = m > 1 ? std::max(0.0, (s2 - m * mean * mean) / (m - 1)) : 0.0;
    rows.push_back({k, mean, std::sqrt(var / m), dh_moment(1.0, k)});
  }
  return rows;
}

std::vector<MomentRow> spectral_moment_check(const SimConfig& cfg) {
  return spectral_moment_check(cfg, sample_dt(cfg));
}

LogSpectrum log_spectrum_vs_f1(const std::vector<DtTrial>& trials, int bins, double lo, double hi, double k_lo,
                               double k_hi) {
  if (bins < 1 || !(hi > lo)) throw Error(ErrorKind::Domain, "bad histogram range");
  LogSpectrum out;
  std::vector<long> counts(bins, 0);
  const double width = (hi - lo) / bins;
  out.max_log_eigenvalue = -HUGE_VAL;
  for (const auto& tr : trials)
    for (double e : tr.eigenvalues) {
      ++out.total;
      if (e <= 1e-12) {
        ++out.dropped;
        continue;
      }
      const double l = std::log(e);
      out.max_log_eigenvalue = std::max(out.max_log_eigenvalue, l);
      const int b = static_cast<int>(std::floor((l - lo) / width));
      if (b >= 0 && b < bins) ++counts[b];
    }
  if (out.total == 0) throw Error(ErrorKind::Domain, "no eigenvalues");
  out.degenerate = out.dropped > 0.01 * out.total;
  for (int b = 0; b < bins; ++b) {
    HistBin h;
    h.left = lo + b * width;
    h.right = h.left + width;
    h.density = counts[b] / (double(out.total) * width);
    // bin average of the limit density, midpoint rule on 16 cells
    double s = 0.0;
    for (int q = 0; q < 16; ++q) s += f1_density(h.left + (q + 0.5) * width / 16.0);
    h.theory = s / 16.0;
    const double mid = 0.5 * (h.left + h.right);
    if (mid >= k_lo && mid <= k_hi) out.sup_distance = std::max(out.sup_distance, std::abs(h.density - h.theory));
    out.bins.push_back(h);
  }
  return out;
}

}  // namespace freelevy
