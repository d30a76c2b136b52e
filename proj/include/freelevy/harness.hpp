#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freelevy/law_types.hpp"
#include "freelevy/measures.hpp"

namespace freelevy {

// name[:p1,p2,...]; see README for the list of names.
MeasureRep parse_law(const std::string& spec);
// Same, but the result must be one of the named laws.
KnownLaw parse_known_law(const std::string& spec);
std::vector<double> parse_list(const std::string& csv);

enum class ExperimentKind {
  BooleanLogCauchy,
  BooleanLogStable,
  FreeLogCauchy,
  FreeBesselMoments,
  LogFsMoments,
  Tucci,
  UnitaryBm,
  LambdaWrap,
  DtMatrix,
  EcalcProps,
};

ExperimentKind parse_kind(const std::string& name);
const char* kind_name(ExperimentKind k);
std::vector<std::string> kind_names();

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::EcalcProps;
  std::string law;
  std::vector<double> t_list;
  double k_lo = 0.0, k_hi = 0.0;
  // second interval (log Boolean stable only)
  double km_lo = 0.0, km_hi = 0.0;
  int grid = 512;
  double alpha = 0.0, rho = 0.5;
  double r = 1.0, s = 2.0;
  std::vector<double> gammas;
  int n = 400;
  int trials = 10;
  std::uint64_t seed = 42;
  int jobs = 1;
  // empty: nothing written
  std::string out;
  std::optional<double> threshold;
};

// Kind defaults for every field the caller left unset (t_list empty, K zero, law empty...).
ExperimentSpec with_defaults(ExperimentSpec spec);
// Throws Domain naming the missing or inconsistent field.
void check_spec(const ExperimentSpec& spec);

struct ExperimentResult {
  bool passed = false;
  nlohmann::json summary;
  std::vector<std::string> artifacts;
};

ExperimentResult run(const ExperimentSpec& spec);

struct EcalcResiduals {
  double powers = 0.0;
  double commutation = 0.0;
  double key_identity = 0.0;
  double bp_map_mp = 0.0;
};

// Power laws and commutation on MP and b_{1/2} (64-point grid), key identity at t in {0.25, 0.5}.
EcalcResiduals ecalc_residuals();

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool skipped = false;
  double seconds = 0.0;
  nlohmann::json metrics;
};

constexpr int kCriterionCount = 12;
CriterionResult run_criterion(int id, std::uint64_t seed = 42);

struct VerifyReport {
  std::vector<CriterionResult> results;
  bool complete = true;
  bool all_passed = true;
  double seconds = 0.0;
  nlohmann::json to_json() const;
};

// Runs criteria in order and skips any whose expected cost no longer fits in the budget.
VerifyReport verify_all(double budget_seconds = 300.0, std::uint64_t seed = 42, int jobs = 1);

}  // namespace freelevy
