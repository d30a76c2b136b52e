// freelevy: command-line front end for the limit-theorem experiments.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "freelevy/boolean_small_time.hpp"
#include "freelevy/error.hpp"
#include "freelevy/free_small_time.hpp"
#include "freelevy/harness.hpp"
#include "freelevy/kernels.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/quadrature.hpp"
#include "freelevy/report.hpp"

using namespace freelevy;

namespace {

// --config FILE: flat key=value lines become --key value, appended unless the flag is already on the command line
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> out;
  std::string cfg;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      cfg = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      cfg = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (cfg.empty()) return out;
  std::ifstream f(cfg);
  if (!f) throw Error(ErrorKind::Parse, "cannot read config file " + cfg);
  std::set<std::string> given;
  for (const auto& a : out)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  std::string line;
  int ln = 0;
  while (std::getline(f, line)) {
    ++ln;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, cfg + ":" + std::to_string(ln) + ": expected key=value");
    auto strip = [](std::string s) {
      const auto p = s.find_first_not_of(" \t\r");
      const auto q = s.find_last_not_of(" \t\r");
      return p == std::string::npos ? std::string() : s.substr(p, q - p + 1);
    };
    const std::string key = strip(line.substr(0, eq)), val = strip(line.substr(eq + 1));
    if (given.count(key)) continue;
    out.push_back("--" + key);
    out.push_back(val);
  }
  return out;
}

int finish(const nlohmann::json& j, bool passed) {
  std::cout << j.dump(2) << "\n";
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freelevy: small-time and large-time limits of free, Boolean and wrapped Levy processes"};
  app.require_subcommand(1);
  std::uint64_t seed = 42;
  int jobs = 1;
  std::string out;
  std::string backend = "auto";

  auto common = [&](CLI::App* sc) {
    sc->add_option("--seed", seed, "master seed")->envname("FREELEVY_SEED");
    sc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sc->add_option("--out", out, "output directory for CSV/JSON artifacts");
    sc->add_option("--simd", backend, "kernel backend: auto, scalar, avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  };

  // density
  auto* dens = app.add_subcommand("density", "density of a Boolean or free power on an interval");
  std::string d_law = "twopoint:2,0.5", d_mode = "boolean";
  double d_t = 0.5, d_power = 1.0, d_lo = 0.5, d_hi = 2.0;
  int d_grid = 512;
  dens->add_option("--law", d_law, "law spec name[:p1,...]");
  dens->add_option("--mode", d_mode, "boolean (multiplicative Boolean power), free (multiplicative free power), law")
      ->check(CLI::IsMember({"boolean", "free", "law"}));
  dens->add_option("--t", d_t, "convolution power");
  dens->add_option("--power", d_power, "push-forward x -> x^power");
  dens->add_option("--k-lo", d_lo);
  dens->add_option("--k-hi", d_hi);
  dens->add_option("--grid", d_grid);
  common(dens);

  // limit <kind>
  auto* lim = app.add_subcommand("limit", "run one limit-theorem experiment");
  std::string kind;
  ExperimentSpec spec;
  std::string t_csv, gammas_csv;
  double threshold = NAN;
  lim->add_option("kind", kind, "experiment kind")->required()->check(CLI::IsMember(kind_names()));
  lim->add_option("--law", spec.law);
  lim->add_option("--t", t_csv, "comma-separated times");
  lim->add_option("--k-lo", spec.k_lo);
  lim->add_option("--k-hi", spec.k_hi);
  lim->add_option("--km-lo", spec.km_lo);
  lim->add_option("--km-hi", spec.km_hi);
  lim->add_option("--grid", spec.grid);
  lim->add_option("--alpha", spec.alpha);
  lim->add_option("--rho", spec.rho);
  lim->add_option("--r", spec.r);
  lim->add_option("--s", spec.s);
  lim->add_option("--gammas", gammas_csv, "comma-separated moment orders");
  lim->add_option("--n", spec.n, "matrix size (dt-matrix)");
  lim->add_option("--trials", spec.trials, "trials (dt-matrix)");
  lim->add_option("--threshold", threshold, "pass threshold, overriding the kind default");
  common(lim);

  // randmat
  auto* rm = app.add_subcommand("randmat", "DT random matrix spectrum against DH_1 and f_1");
  int rm_n = 400, rm_trials = 10;
  rm->add_option("--n", rm_n);
  rm->add_option("--trials", rm_trials);
  common(rm);

  // props
  auto* props = app.add_subcommand("props", "E-calculus power, commutation and key identity residuals");
  common(props);

  // verify
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  double budget = 300.0;
  int only = 0;
  ver->add_option("--budget", budget, "seconds");
  ver->add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, kCriterionCount));
  common(ver);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (backend == "scalar") kernels::set_backend(kernels::Backend::Scalar);
    if (backend == "avx2") kernels::set_backend(kernels::Backend::Avx2);

    if (*dens) {
      const auto grid = linspace(d_lo, d_hi, d_grid);
      GridDensity g;
      if (d_mode == "boolean") {
        g = boolean_power_density({parse_law(d_law), d_t, d_power, d_lo, d_hi, d_grid});
      } else if (d_mode == "free") {
        g = free_power_density(parse_known_law(d_law), d_t, d_power, grid);
      } else {
        const KnownLaw l = parse_known_law(d_law);
        g = sample_density([&](double x) { return density_of(l, x).value_or(0.0); }, grid);
      }
      const std::string csv = grid_density_csv(g);
      if (out.empty()) std::cout << csv;
      else write_text(out + "/density.csv", csv);
      return 0;
    }
    if (*lim) {
      spec.kind = parse_kind(kind);
      if (!t_csv.empty()) spec.t_list = parse_list(t_csv);
      if (!gammas_csv.empty()) spec.gammas = parse_list(gammas_csv);
      if (!std::isnan(threshold)) spec.threshold = threshold;
      spec.seed = seed;
      spec.jobs = jobs;
      spec.out = out;
      const ExperimentResult r = run(spec);
      return finish(r.summary, r.passed);
    }
    if (*rm) {
      ExperimentSpec s;
      s.kind = ExperimentKind::DtMatrix;
      s.n = rm_n;
      s.trials = rm_trials;
      s.seed = seed;
      s.jobs = jobs;
      s.out = out;
      const ExperimentResult r = run(s);
      return finish(r.summary, r.passed);
    }
    if (*props) {
      ExperimentSpec s;
      s.kind = ExperimentKind::EcalcProps;
      s.out = out;
      const ExperimentResult r = run(s);
      return finish(r.summary, r.passed);
    }
    if (*ver) {
      VerifyReport rep;
      if (only) {
        rep.results.push_back(run_criterion(only, seed));
        rep.all_passed = rep.results[0].passed;
      } else {
        rep = verify_all(budget, seed, jobs);
      }
      for (const auto& r : rep.results)
        std::fprintf(stderr, "[%s] criterion %d: %s (%.2f s)\n", r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL"), r.id,
                     r.title.c_str(), r.seconds);
      const auto j = rep.to_json();
      if (!out.empty()) write_text(out + "/verify.json", j.dump(2) + "\n");
      return finish(j, rep.all_passed);
    }
  } catch (const Error& e) {
    nlohmann::json j{{"error", e.what()}, {"kind", error_kind_name(e.kind())}};
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return 2;
  }
  return 0;
}
