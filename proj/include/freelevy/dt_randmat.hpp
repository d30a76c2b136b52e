#pragma once

#include <cstdint>
#include <vector>

#include "freelevy/linalg.hpp"

namespace freelevy {

struct SimConfig {
  int n = 400;
  int trials = 10;
  std::uint64_t seed = 42;
  std::vector<int> moment_orders{1, 2, 3};
  // cap on trials * n^2
  double budget = 5e7;
  // worker threads for the trial loop; results do not depend on it
  int jobs = 1;
};

void validate(const SimConfig& cfg);

// SplitMix64 finaliser applied to master + golden * (trial + 1).
std::uint64_t trial_seed(std::uint64_t master, int trial);

// Strictly upper-triangular matrix, entries complex Gaussian with E|t_ij|^2 = 1/n.
// Generator: mt19937_64 seeded with trial_seed, Box-Muller on 53-bit uniforms.
CMatrix sample_upper_triangular(int n, std::uint64_t seed);

struct DtTrial {
  std::vector<double> eigenvalues;  // of T^* T, ascending
  double frobenius = 0.0;           // sum |t_ij|^2
};

std::vector<DtTrial> sample_dt(const SimConfig& cfg);

struct MomentRow {
  int n = 0;
  double empirical = 0.0;
  double stderr_ = 0.0;
  double theory = 0.0;
};

std::vector<MomentRow> spectral_moment_check(const SimConfig& cfg, const std::vector<DtTrial>& trials);
std::vector<MomentRow> spectral_moment_check(const SimConfig& cfg);

struct HistBin {
  double left = 0.0;
  double right = 0.0;
  double density = 0.0;
  double theory = 0.0;
};

struct LogSpectrum {
  std::vector<HistBin> bins;
  double sup_distance = 0.0;
  long dropped = 0;
  long total = 0;
  // more than 1% of the eigenvalues were <= 1e-12
  bool degenerate = false;
  double max_log_eigenvalue = 0.0;
};

// Histogram of log-eigenvalues on [lo, hi] against the free 1-stable density;
// the sup is taken over bins whose centre lies in [k_lo, k_hi].
LogSpectrum log_spectrum_vs_f1(const std::vector<DtTrial>& trials, int bins = 64, double lo = -6.0, double hi = 1.2,
                               double k_lo = -4.0, double k_hi = 0.9);

}  // namespace freelevy
