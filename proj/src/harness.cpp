#include "freelevy/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "freelevy/boolean_small_time.hpp"
#include "freelevy/circle_wrap.hpp"
#include "freelevy/dt_randmat.hpp"
#include "freelevy/ecalc.hpp"
#include "freelevy/error.hpp"
#include "freelevy/free_small_time.hpp"
#include "freelevy/laws.hpp"
#include "freelevy/mellin_moments.hpp"
#include "freelevy/quadrature.hpp"
#include "freelevy/report.hpp"
#include "freelevy/specfun.hpp"

namespace freelevy {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

void need(const std::string& name, const std::vector<double>& p, size_t lo, size_t hi) {
  if (p.size() < lo || p.size() > hi) {
    std::ostringstream os;
    os << name << " takes " << lo;
    if (hi != lo) os << " to " << hi;
    os << " parameters, got " << p.size();
    throw Error(ErrorKind::Parse, os.str());
  }
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Domain, msg);
}

}  // namespace

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw Error(ErrorKind::Parse, "empty entry in list '" + csv + "'");
    size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "not a number: '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorKind::Parse, "not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

MeasureRep parse_law(const std::string& spec_in) {
  const std::string spec = trim(spec_in);
  const auto colon = spec.find(':');
  const std::string name = lower(trim(spec.substr(0, colon)));
  const std::vector<double> p = colon == std::string::npos ? std::vector<double>{} : parse_list(spec.substr(colon + 1));
  auto at = [&](size_t i, double dflt) { return i < p.size() ? p[i] : dflt; };

  if (name == "classicalstable") {
    need(name, p, 2, 2);
    return KnownLaw{law::ClassicalStable{make_admissible(p[0], p[1])}};
  }
  if (name == "freestable") {
    need(name, p, 2, 2);
    return KnownLaw{law::FreeStable{make_admissible(p[0], p[1])}};
  }
  if (name == "booleanstable") {
    need(name, p, 2, 3);
    require(at(2, 1.0) > 0.0, "Boolean stable scale r must be > 0");
    return KnownLaw{law::BooleanStable{make_admissible(p[0], p[1]), at(2, 1.0)}};
  }
  if (name == "lambda") {
    need(name, p, 2, 2);
    return KnownLaw{law::LambdaFreeStable{make_admissible(p[0], p[1])}};
  }
  if (name == "cauchy") {
    need(name, p, 0, 2);
    require(at(1, 1.0) > 0.0, "Cauchy scale gamma must be > 0");
    return KnownLaw{law::Cauchy{at(0, 0.0), at(1, 1.0)}};
  }
  if (name == "semicircle") {
    need(name, p, 0, 0);
    return KnownLaw{law::Semicircle{}};
  }
  if (name == "dh" || name == "dykemahaagerup") {
    need(name, p, 0, 1);
    require(at(0, 1.0) >= 0.0, "DH parameter r must be >= 0");
    return KnownLaw{law::DykemaHaagerup{at(0, 1.0)}};
  }
  if (name == "freebessel") {
    need(name, p, 2, 2);
    require(p[0] >= 0.0 && p[1] >= 0.0, "free Bessel parameters must be >= 0");
    require(std::max(p[0], p[1]) >= 1.0, "free Bessel needs max(r, s) >= 1");
    return KnownLaw{law::FreeBessel{p[0], p[1]}};
  }
  if (name == "nu") {
    need(name, p, 1, 1);
    require(p[0] > 1.0 && p[0] <= 2.0, "nu needs alpha in (1, 2]");
    return KnownLaw{law::NuAlpha{p[0]}};
  }
  if (name == "mu") {
    need(name, p, 2, 2);
    require(p[0] >= 0.0 && p[1] >= 0.0, "mu needs alpha, beta >= 0");
    return KnownLaw{law::MuAlphaBeta{p[0], p[1]}};
  }
  if (name == "mp" || name == "marchenkopastur" || name == "freepoisson") {
    need(name, p, 0, 0);
    return KnownLaw{law::MarchenkoPastur{}};
  }
  if (name == "point" || name == "pointmass" || name == "delta") {
    need(name, p, 1, 1);
    return KnownLaw{law::PointMass{p[0]}};
  }
  if (name == "twopoint") {
    need(name, p, 2, 3);
    require(p[0] != p[1], "two-point atoms must differ");
    require(at(2, 0.5) > 0.0 && at(2, 0.5) < 1.0, "two-point weight must lie in (0, 1)");
    return KnownLaw{law::TwoPoint{p[0], p[1], at(2, 0.5)}};
  }
  if (name == "cusp") {
    need(name, p, 1, 1);
    require(p[0] > 0.0 && p[0] < 1.0, "cusp needs alpha in (0, 1)");
    return KnownLaw{law::Cusp{p[0]}};
  }
  if (name == "atoms") {
    if (p.empty() || p.size() % 2 != 0) throw Error(ErrorKind::Parse, "atoms takes location,weight pairs");
    std::vector<std::pair<double, double>> a;
    for (size_t i = 0; i < p.size(); i += 2) a.emplace_back(p[i], p[i + 1]);
    std::sort(a.begin(), a.end());
    std::vector<double> loc, w;
    for (auto& [x, m] : a) {
      loc.push_back(x);
      w.push_back(m);
    }
    return make_atomic(loc, w);
  }
  throw Error(ErrorKind::Parse, "unknown law '" + name + "'");
}

KnownLaw parse_known_law(const std::string& spec) {
  MeasureRep m = parse_law(spec);
  if (auto* k = std::get_if<KnownLaw>(&m)) return *k;
  throw Error(ErrorKind::Parse, "'" + spec + "' is not a named law");
}

namespace {

const std::map<std::string, ExperimentKind>& kind_table() {
  static const std::map<std::string, ExperimentKind> t{
      {"boolean-logcauchy", ExperimentKind::BooleanLogCauchy}, {"boolean-logstable", ExperimentKind::BooleanLogStable},
      {"free-logcauchy", ExperimentKind::FreeLogCauchy},       {"free-bessel-moments", ExperimentKind::FreeBesselMoments},
      {"logfs-moments", ExperimentKind::LogFsMoments},         {"tucci", ExperimentKind::Tucci},
      {"unitary-bm", ExperimentKind::UnitaryBm},               {"lambda-wrap", ExperimentKind::LambdaWrap},
      {"dt-matrix", ExperimentKind::DtMatrix},                 {"ecalc-props", ExperimentKind::EcalcProps},
  };
  return t;
}

}  // namespace

ExperimentKind parse_kind(const std::string& name) {
  const auto it = kind_table().find(lower(trim(name)));
  if (it == kind_table().end()) throw Error(ErrorKind::Parse, "unknown experiment kind '" + name + "'");
  return it->second;
}

const char* kind_name(ExperimentKind k) {
  for (const auto& [n, v] : kind_table())
    if (v == k) return n.c_str();
  return "?";
}

std::vector<std::string> kind_names() {
  std::vector<std::string> out;
  for (const auto& [n, v] : kind_table()) out.push_back(n);
  return out;
}

ExperimentSpec with_defaults(ExperimentSpec s) {
  auto set_k = [&](double lo, double hi) {
    if (s.k_lo == 0.0 && s.k_hi == 0.0) {
      s.k_lo = lo;
      s.k_hi = hi;
    }
  };
  auto set_t = [&](std::vector<double> t) {
    if (s.t_list.empty()) s.t_list = std::move(t);
  };
  auto set_th = [&](double v) {
    if (!s.threshold) s.threshold = v;
  };
  switch (s.kind) {
    case ExperimentKind::BooleanLogCauchy:
      if (s.law.empty()) s.law = "twopoint:2,0.5";
      set_t({1e-2, 1e-3});
      set_k(0.2, 5.0);
      set_th(5e-2);
      break;
    case ExperimentKind::BooleanLogStable:
      if (s.alpha == 0.0) s.alpha = 0.5;
      set_t({1e-2, 1e-3});
      set_k(1.2, 4.0);
      if (s.km_lo == 0.0 && s.km_hi == 0.0) {
        s.km_lo = 0.25;
        s.km_hi = 0.85;
      }
      set_th(8e-2);
      break;
    case ExperimentKind::FreeLogCauchy:
      if (s.law.empty()) s.law = "booleanstable:0.5,1,1";
      set_t({1e-2, 1e-3});
      set_k(0.3, 3.0);
      set_th(5e-2);
      break;
    case ExperimentKind::FreeBesselMoments:
      set_t({1e-4});
      if (s.gammas.empty()) s.gammas = {1, 2, 3};
      set_th(1e-2);
      break;
    case ExperimentKind::LogFsMoments:
      if (s.alpha == 0.0) s.alpha = 2.0;
      set_t({1e-6});
      if (s.gammas.empty()) s.gammas = {1, 2};
      set_th(1e-2);
      break;
    case ExperimentKind::Tucci:
      if (s.law.empty()) s.law = "mp";
      set_t({8, 16, 32, 64});
      set_k(0.05, 0.95);
      set_th(5e-2);
      break;
    case ExperimentKind::UnitaryBm:
      set_t({1e-2, 1e-4});
      set_th(1e-2);
      break;
    case ExperimentKind::LambdaWrap:
      if (s.alpha == 0.0) s.alpha = 2.0;
      set_t({1e-2, 1e-4, 1e-6});
      set_th(1e-2);
      break;
    case ExperimentKind::DtMatrix:
      set_th(5e-2);
      break;
    case ExperimentKind::EcalcProps:
      set_th(1e-8);
      break;
  }
  return s;
}

void check_spec(const ExperimentSpec& s) {
  for (double t : s.t_list) require(t > 0.0 && std::isfinite(t), "t values must be positive");
  const bool needs_t = s.kind != ExperimentKind::DtMatrix && s.kind != ExperimentKind::EcalcProps;
  require(!needs_t || !s.t_list.empty(), "t list is empty");
  require(s.grid >= 8, "grid must have at least 8 points");
  switch (s.kind) {
    case ExperimentKind::BooleanLogCauchy:
    case ExperimentKind::FreeLogCauchy:
    case ExperimentKind::Tucci:
      require(!s.law.empty(), "law is required");
      require(s.k_lo > 0.0 && s.k_hi > s.k_lo, "K must be an interval inside (0, inf)");
      break;
    case ExperimentKind::BooleanLogStable:
      require(s.alpha > 0.0 && s.alpha < 1.0, "alpha must lie in (0, 1)");
      require(s.k_lo > 1.0 && s.k_hi > s.k_lo, "K+ must sit inside (1, inf)");
      require(s.km_lo > 0.0 && s.km_hi > s.km_lo && s.km_hi < 1.0, "K- must sit inside (0, 1)");
      break;
    case ExperimentKind::FreeBesselMoments:
      require(s.r >= 0.0 && s.s >= 1.0, "free Bessel moments need r >= 0 and s >= 1");
      require(s.s == 1.0 || s.r >= 1.0, "for s > 1 the closed form needs r >= 1");
      require(!s.gammas.empty(), "gammas are required");
      break;
    case ExperimentKind::LogFsMoments:
      require(s.alpha > 1.0 && s.alpha <= 2.0, "alpha must lie in (1, 2]");
      require(!s.gammas.empty(), "gammas are required");
      break;
    case ExperimentKind::LambdaWrap:
      make_admissible(s.alpha, s.rho);
      break;
    case ExperimentKind::DtMatrix: {
      SimConfig c;
      c.n = s.n;
      c.trials = s.trials;
      c.jobs = s.jobs;
      validate(c);
      break;
    }
    case ExperimentKind::UnitaryBm:
    case ExperimentKind::EcalcProps:
      break;
  }
}

EcalcResiduals ecalc_residuals() {
  EcalcResiduals out;
  const KnownLaw b = law::BooleanStable{{0.5, 1.0}, 1.0};
  const EClassMap mp = from_v_function(law::MarchenkoPastur{});
  const EClassMap eb = from_v_function(b);
  const auto grid = eclass_grid(64);
  for (const EClassMap* e : {&mp, &eb}) {
    for (double s : {1.0, 1.5, 2.0, 3.0}) {
      const EClassMap es = free_power_map(*e, s);
      for (double t : {1.0, 1.5, 2.0, 3.0})
        for (double x : grid) {
          const double a = free_power(es, t, x), c = free_power(*e, s * t, x);
          out.powers = std::max(out.powers, std::abs(a - c) / std::abs(c));
          // Boolean powers compose exactly
          const double ba = boolean_power(boolean_power(*e, s), t).eta(x), bc = boolean_power(*e, s * t).eta(x);
          out.powers = std::max(out.powers, std::abs(ba - bc) / std::abs(bc));
        }
    }
    for (double p : {0.3, 0.7, 1.2})
      for (double q : {1.5, 2.0}) {
        const double qq = 1.0 - p + p * q, pp = p * q / qq;
        const EClassMap lhs = boolean_power(*e, p);
        const EClassMap rhs = boolean_power(free_power_map(*e, qq), pp);
        for (double x : grid) {
          const double a = free_power(lhs, q, x), c = rhs.eta(x);
          out.commutation = std::max(out.commutation, std::abs(a - c) / std::abs(c));
        }
      }
  }
  for (double t : {0.25, 0.5}) {
    const EClassMap k = semigroup_at(eb, t);
    const EClassMap ex = from_probability_measure(MeasureRep{boolean_stable_boxtimes_power(0.5, t)});
    for (double x : eclass_grid(50))
      out.key_identity = std::max(out.key_identity, std::abs(k.eta(x) - ex.eta(x)) / std::abs(ex.eta(x)));
  }
  const EClassMap m = bp_map(mp);
  const EClassMap me = from_probability_measure(MeasureRep{KnownLaw{law::MarchenkoPastur{}}});
  for (double x : eclass_grid(50))
    out.bp_map_mp = std::max(out.bp_map_mp, std::abs(m.eta(x) - me.eta(x)) / std::abs(me.eta(x)));
  return out;
}

namespace {

void emit(ExperimentResult& res, const ExperimentSpec& s, const std::string& stem, const std::string& body) {
  if (s.out.empty()) return;
  const std::string path = s.out + "/" + stem;
  write_text(path, body);
  res.artifacts.push_back(path);
}

bool limit_pass(const LimitTable& tab, double th) {
  return !tab.rows.empty() && tab.decreasing && tab.rows.back().sup_distance < th;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

ExperimentResult run(const ExperimentSpec& spec_in) {
  const ExperimentSpec s = with_defaults(spec_in);
  check_spec(s);
  const double th = *s.threshold;
  ExperimentResult res;
  json& j = res.summary;
  j["kind"] = kind_name(s.kind);
  j["threshold"] = th;
  const std::string stem = kind_name(s.kind);
  switch (s.kind) {
    case ExperimentKind::BooleanLogCauchy: {
      const MeasureRep mu = parse_law(s.law);
      const LimitTable tab = log_cauchy_limit_check(mu, s.t_list, s.k_lo, s.k_hi, s.grid);
      j["law"] = s.law;
      j["table"] = to_json(tab);
      res.passed = limit_pass(tab, th);
      emit(res, s, stem + ".csv", limit_csv(tab).str());
      const double t = tab.rows.back().t;
      const auto d = boolean_power_density({mu, t, 1.0 / t, s.k_lo, s.k_hi, s.grid});
      const auto lim =
          sample_density([&](double x) { return log_cauchy_density(tab.beta, tab.gamma, x); }, d.grid);
      emit(res, s, stem + "_overlay.csv", overlay_csv(d, lim).str());
      break;
    }
    case ExperimentKind::BooleanLogStable: {
      const LimitTable tab = log_boolean_stable_limit_check(s.alpha, s.k_lo, s.k_hi, s.km_lo, s.km_hi, s.t_list, s.grid);
      j["table"] = to_json(tab);
      res.passed = limit_pass(tab, th);
      emit(res, s, stem + ".csv", limit_csv(tab).str());
      break;
    }
    case ExperimentKind::FreeLogCauchy: {
      const KnownLaw law = parse_known_law(s.law);
      const LimitTable tab = log_cauchy_free_limit_check(law, s.t_list, s.k_lo, s.k_hi, s.grid);
      j["law"] = s.law;
      j["table"] = to_json(tab);
      res.passed = limit_pass(tab, th);
      emit(res, s, stem + ".csv", limit_csv(tab).str());
      break;
    }
    case ExperimentKind::FreeBesselMoments: {
      json tabs = json::array();
      CsvTable csv{{"gamma", "t", "value", "limit", "abs_err"}, {}};
      bool ok = true;
      const auto ts = sorted_desc(s.t_list);
      for (double t : ts) {
        MomentTable tab;
        if (s.s == 1.0) {
          tab.t = t;
          tab.gammas = s.gammas;
          for (double g : s.gammas) {
            tab.values.push_back(free_bessel_moment_s1(s.r, g, t));
            tab.limit_values.push_back(dh_moment(s.r, g));
          }
        } else {
          tab = free_bessel_table(s.r, s.s, s.gammas, t);
        }
        tabs.push_back(to_json(tab));
        for (auto& row : moment_csv(tab).rows) csv.rows.push_back(row);
        if (t == ts.back())
          for (size_t i = 0; i < tab.values.size(); ++i)
            ok = ok && std::abs(tab.values[i] - tab.limit_values[i]) < th * std::abs(tab.limit_values[i]);
      }
      j["r"] = s.r;
      j["s"] = s.s;
      j["tables"] = tabs;
      j["relative"] = true;
      res.passed = ok;
      emit(res, s, stem + ".csv", csv.str());
      break;
    }
    case ExperimentKind::LogFsMoments: {
      json tabs = json::array();
      CsvTable csv{{"gamma", "t", "value", "limit", "abs_err"}, {}};
      bool ok = true;
      const auto ts = sorted_desc(s.t_list);
      for (double t : ts) {
        const MomentTable tab = nu_alpha_table(s.alpha, s.gammas, t);
        tabs.push_back(to_json(tab));
        for (auto& row : moment_csv(tab).rows) csv.rows.push_back(row);
        if (t == ts.back())
          for (size_t i = 0; i < tab.values.size(); ++i)
            ok = ok && std::abs(tab.values[i] - tab.limit_values[i]) < th * std::abs(tab.limit_values[i]);
      }
      j["alpha"] = s.alpha;
      j["tables"] = tabs;
      j["relative"] = true;
      res.passed = ok;
      emit(res, s, stem + ".csv", csv.str());
      break;
    }
    case ExperimentKind::Tucci: {
      const KnownLaw law = parse_known_law(s.law);
      const TucciLimit lim = tucci_limit(MeasureRep{law});
      const LimitTable tab = tucci_convergence_check(law, s.t_list, s.k_lo, s.k_hi, s.grid);
      j["law"] = s.law;
      j["table"] = to_json(tab);
      j["limit"] = {{"degenerate", lim.degenerate}, {"support_lo", lim.support_lo}, {"support_hi", lim.support_hi}};
      res.passed = limit_pass(tab, th);
      emit(res, s, stem + ".csv", limit_csv(tab).str());
      if (!lim.degenerate) emit(res, s, stem + "_limit.csv", grid_density_csv(lim.density));
      break;
    }
    case ExperimentKind::UnitaryBm: {
      const UnitaryTable tab = unitary_bm_limit_check(s.t_list);
      j["table"] = to_json(tab);
      bool ok = tab.decreasing;
      const double tmin = *std::min_element(s.t_list.begin(), s.t_list.end());
      for (const auto& r : tab.rows)
        if (r.t == tmin) ok = ok && r.abs_err < th;
      res.passed = ok;
      emit(res, s, stem + ".csv", unitary_csv(tab).str());
      break;
    }
    case ExperimentKind::LambdaWrap: {
      const std::vector<cplx> zs{{0.0, 1.0}, {1.0, 1.0}, {-1.0, 0.5}};
      const LimitTable tab = lambda_voiculescu_convergence(s.alpha, s.rho, s.t_list, zs);
      j["table"] = to_json(tab);
      res.passed = limit_pass(tab, th);  // decreasing means non-increasing for this table
      emit(res, s, stem + ".csv", limit_csv(tab).str());
      break;
    }
    case ExperimentKind::DtMatrix: {
      SimConfig c;
      c.n = s.n;
      c.trials = s.trials;
      c.seed = s.seed;
      c.jobs = s.jobs;
      const auto trials = sample_dt(c);
      const auto moments = spectral_moment_check(c, trials);
      const LogSpectrum ls = log_spectrum_vs_f1(trials);
      bool ok = ls.sup_distance < th && ls.max_log_eigenvalue < 1.1;
      for (const auto& m : moments) ok = ok && std::abs(m.empirical - m.theory) < 0.05 * m.theory;
      j["n"] = s.n;
      j["trials"] = s.trials;
      j["seed"] = s.seed;
      j["moments"] = to_json(moments);
      j["moment_rel_threshold"] = 0.05;
      j["log_spectrum"] = to_json(ls);
      j["max_log_eigenvalue_threshold"] = 1.1;
      res.passed = ok;
      emit(res, s, stem + "_moments.csv", dt_moment_csv(moments).str());
      emit(res, s, stem + "_histogram.csv", histogram_csv(ls).str());
      break;
    }
    case ExperimentKind::EcalcProps: {
      const EcalcResiduals r = ecalc_residuals();
      j["powers"] = r.powers;
      j["commutation"] = r.commutation;
      j["key_identity"] = r.key_identity;
      j["bp_map_mp"] = r.bp_map_mp;
      j["key_identity_threshold"] = 1e-6;
      res.passed = r.powers < th && r.commutation < th && r.key_identity < 1e-6;
      break;
    }
  }
  j["passed"] = res.passed;
  emit(res, s, stem + ".json", j.dump(2) + "\n");
  return res;
}

namespace {

using Clock = std::chrono::steady_clock;

const char* const kTitles[] = {
    "Boolean log-Cauchy limit, two-point law",
    "Boolean log-stable limit, cusp law alpha = 1/2",
    "free log-Cauchy limit, b_{1/2}, two routes",
    "free Bessel moments towards DH",
    "nu_alpha series towards the log free stable law",
    "two-law series, alpha = (2, 1.5)",
    "Tucci limit of MP is uniform on [0,1]",
    "E-calculus identities",
    "DT random matrix spectrum",
    "free unitary Brownian motion moments",
    "wrapping map",
    "Boolean stable laws are strictly stable",
};

double semicircle_laplace(double gamma) {
  // int e^{-gamma x} sqrt(4 - x^2) / (2 pi) dx with x = 2u and weight (1-u)^{1/2}(1+u)^{1/2}
  const auto q = gauss_jacobi(64, 0.5, 0.5);
  double s = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::exp(-2.0 * gamma * q.nodes[i]);
  return s * 4.0 / (2.0 * kPi);
}

json rows_json(const LimitTable& t) { return to_json(t)["rows"]; }

CriterionResult crit1() {
  CriterionResult c{1, kTitles[0], false, false, 0.0, {}};
  const LimitTable tab = log_cauchy_limit_check(parse_law("twopoint:2,0.5"), {1e-2, 1e-3}, 0.2, 5.0);
  c.metrics = {{"beta", tab.beta}, {"gamma", tab.gamma}, {"rows", rows_json(tab)}, {"threshold", 5e-2}};
  c.passed = tab.decreasing && tab.rows.back().sup_distance < 5e-2 && std::abs(tab.beta) < 1e-6 &&
             std::abs(tab.gamma - kPi) < 1e-6;
  return c;
}

CriterionResult crit2() {
  CriterionResult c{2, kTitles[1], false, false, 0.0, {}};
  const LimitTable tab = log_boolean_stable_limit_check(0.5, 1.2, 4.0, 0.25, 0.85, {1e-2, 1e-3});
  c.metrics = {{"r", tab.r}, {"rho", tab.rho}, {"rows", rows_json(tab)}, {"threshold", 8e-2}};
  c.passed = tab.decreasing && tab.rows.back().sup_distance < 8e-2;
  return c;
}

CriterionResult crit3() {
  CriterionResult c{3, kTitles[2], false, false, 0.0, {}};
  const KnownLaw b = law::BooleanStable{{0.5, 1.0}, 1.0};
  const auto grid = linspace(0.3, 3.0, 512);
  const auto lim = sample_density([](double x) { return log_cauchy_density(0.0, kPi, x); }, grid);
  const double t = 1e-3;
  const double da = sup_density_distance(boolean_stable_boxtimes_density(0.5, t, 1.0 / t, grid), lim, 0.3, 3.0);
  const double db = sup_density_distance(free_power_density(b, t, 1.0 / t, grid), lim, 0.3, 3.0);
  const double agree = sup_density_distance(boolean_stable_boxtimes_density(0.5, 0.25, 4.0, grid),
                                            free_power_density(b, 0.25, 4.0, grid), 0.3, 3.0);
  c.metrics = {{"exact_route", da}, {"pipeline_route", db}, {"threshold", 5e-2}, {"route_gap_t025", agree},
               {"route_gap_threshold", 1e-3}};
  c.passed = da < 5e-2 && db < 5e-2 && agree < 1e-3;
  return c;
}

CriterionResult crit4() {
  CriterionResult c{4, kTitles[3], false, false, 0.0, {}};
  const MomentTable tab = free_bessel_table(1.0, 2.0, {1, 2, 3}, 1e-4);
  json rows = json::array();
  bool ok = true;
  for (size_t i = 0; i < tab.values.size(); ++i) {
    const double rel = std::abs(tab.values[i] - tab.limit_values[i]) / tab.limit_values[i];
    rows.push_back({{"gamma", tab.gammas[i]}, {"value", tab.values[i]}, {"limit", tab.limit_values[i]}, {"rel_err", rel}});
    ok = ok && rel < 1e-2;
  }
  for (double r : {1.0, 2.0})
    for (double g : {1.0, 2.0, 3.0}) {
      const double v = free_bessel_moment_s1(r, g, 1e-4), l = dh_moment(r, g);
      const double rel = std::abs(v - l) / l;
      rows.push_back({{"s", 1}, {"r", r}, {"gamma", g}, {"value", v}, {"limit", l}, {"rel_err", rel}});
      ok = ok && rel < 1e-2;
    }
  c.metrics = {{"rows", rows}, {"threshold", 1e-2}};
  c.passed = ok;
  return c;
}

CriterionResult crit5() {
  CriterionResult c{5, kTitles[4], false, false, 0.0, {}};
  const MomentTable tab = nu_alpha_table(2.0, {1, 2}, 1e-6);
  json rows = json::array();
  bool ok = true;
  for (size_t i = 0; i < tab.values.size(); ++i) {
    const double g = tab.gammas[i];
    const double target = bessel_i1(2.0 * g) / g;
    const double rel = std::abs(tab.values[i] - target) / target;
    rows.push_back({{"gamma", g}, {"value", tab.values[i]}, {"limit", target}, {"rel_err", rel}});
    ok = ok && rel < 1e-2;
  }
  const double lap = laplace_free_stable(2.0, 1.0), quad = semicircle_laplace(1.0);
  c.metrics = {{"rows", rows}, {"threshold", 1e-2}, {"laplace_series", lap}, {"laplace_quadrature", quad},
               {"laplace_gap", std::abs(lap - quad)}, {"laplace_threshold", 1e-6}};
  c.passed = ok && std::abs(lap - quad) < 1e-6;
  return c;
}

CriterionResult crit6() {
  CriterionResult c{6, kTitles[5], false, false, 0.0, {}};
  const double t = 1e-6, xi = 1.0 / std::sqrt(t);
  const SeriesResult two = multi_law_series({2.0, 1.5}, {1.0, 1.0}, 1.0, t, xi);
  const SeriesResult one = multi_law_series({2.0}, {1.0}, 1.0, t, xi);
  const SeriesResult ref = nu_alpha_series(2.0, 1.0, t, xi);
  const double target = bessel_i1(2.0);
  c.metrics = {{"value", two.value},
               {"target", target},
               {"abs_err", std::abs(two.value - target)},
               {"threshold", 2e-2},
               {"single_law_gap", std::abs(one.value - ref.value)}};
  c.passed = std::abs(two.value - target) < 2e-2 && one.value == ref.value;
  return c;
}

CriterionResult crit7() {
  CriterionResult c{7, kTitles[6], false, false, 0.0, {}};
  const TucciLimit lim = tucci_limit(MeasureRep{KnownLaw{law::MarchenkoPastur{}}});
  double dev = 0.0;
  for (size_t i = 0; i < lim.levels.size(); ++i) dev = std::max(dev, std::abs(lim.cdf(lim.quantiles[i]) - lim.quantiles[i]));
  for (double q : linspace(0.0, 1.0, 101)) dev = std::max(dev, std::abs(lim.cdf(q) - q));
  const LimitTable tab = tucci_convergence_check(law::MarchenkoPastur{}, {8, 16, 32, 64});
  c.metrics = {{"cdf_deviation", dev}, {"cdf_threshold", 1e-6}, {"rows", rows_json(tab)}, {"threshold", 5e-2}};
  c.passed = dev < 1e-6 && tab.decreasing && tab.rows.back().sup_distance < 5e-2;
  return c;
}

CriterionResult crit8() {
  CriterionResult c{8, kTitles[7], false, false, 0.0, {}};
  const EcalcResiduals r = ecalc_residuals();
  c.metrics = {{"powers", r.powers},           {"commutation", r.commutation}, {"key_identity", r.key_identity},
               {"bp_map_mp", r.bp_map_mp},     {"threshold", 1e-8},          {"key_identity_threshold", 1e-6}};
  c.passed = r.powers < 1e-8 && r.commutation < 1e-8 && r.key_identity < 1e-6;
  return c;
}

CriterionResult crit9(std::uint64_t seed) {
  CriterionResult c{9, kTitles[8], false, false, 0.0, {}};
  SimConfig cfg;
  cfg.seed = seed;
  const auto trials = sample_dt(cfg);
  const auto m = spectral_moment_check(cfg, trials);
  const LogSpectrum ls = log_spectrum_vs_f1(trials);
  bool ok = ls.sup_distance < 0.05 && ls.max_log_eigenvalue < 1.1;
  for (const auto& row : m) ok = ok && std::abs(row.empirical - row.theory) < 0.05 * row.theory;
  c.metrics = {{"moments", to_json(m)}, {"log_spectrum", to_json(ls)}, {"seed", seed}};
  c.passed = ok;
  return c;
}

CriterionResult crit10() {
  CriterionResult c{10, kTitles[9], false, false, 0.0, {}};
  const UnitaryTable tab = unitary_bm_limit_check({1e-2, 1e-4});
  bool ok = tab.decreasing;
  for (const auto& r : tab.rows)
    if (r.t == 1e-4) ok = ok && r.abs_err < 1e-2;
  c.metrics = to_json(tab);
  c.passed = ok;
  return c;
}

CriterionResult crit11() {
  CriterionResult c{11, kTitles[10], false, false, 0.0, {}};
  const double hom = wrap_homomorphism_check(MeasureRep{KnownLaw{law::Cauchy{0.0, 1.0}}},
                                             {{0.0, 1.0}, {1.0, 1.0}, {2.0, 0.5}});
  const SeriesIdentity si = series_identity_check(kPi);
  // atoms at 0 and 2 plus a smooth density
  CircleSigma sigma;
  sigma.atoms = AtomicMeasure{{0.0, 2.0}, {0.4, 0.25}};
  const auto th = linspace(0.0, 2.0 * kPi, 513);
  std::vector<double> v;
  for (double x : th) v.push_back(0.3 + 0.1 * std::cos(x) + 0.05 * std::sin(2.0 * x));
  sigma.density = make_grid_density(th, v, HUGE_VAL);
  const WrappedPair orig{std::polar(1.0, 0.7), sigma};
  double trip = 0.0;
  for (int branch : {0, 1}) trip = std::max(trip, pair_distance(orig, additive_to_mult_pair(mult_to_additive_pair(orig.gamma, sigma, branch))));
  const std::vector<cplx> zs{{0.0, 1.0}, {1.0, 1.0}, {-1.0, 0.5}};
  json lam = json::array();
  bool lam_ok = true;
  for (auto [a, r] : std::vector<std::pair<double, double>>{{2.0, 0.5}, {1.5, 0.6}, {1.0, 0.5}}) {
    const LimitTable tab = lambda_voiculescu_convergence(a, r, {1e-2, 1e-4, 1e-6}, zs);
    lam.push_back({{"alpha", a}, {"rho", r}, {"rows", rows_json(tab)}, {"non_increasing", tab.decreasing}});
    lam_ok = lam_ok && tab.decreasing && tab.rows.back().sup_distance < 1e-2;
  }
  c.metrics = {{"homomorphism", hom},     {"series_lhs", si.lhs}, {"series_rhs", si.rhs},
               {"pair_round_trip", trip}, {"lambda", lam}};
  c.passed = hom < 1e-8 && std::abs(si.lhs - 0.25) < 1e-12 && std::abs(si.rhs - 0.25) < 1e-12 && trip < 1e-8 && lam_ok;
  return c;
}

CriterionResult crit12() {
  CriterionResult c{12, kTitles[11], false, false, 0.0, {}};
  const std::vector<std::pair<double, double>> pairs{{0.5, 1.0}, {0.7, 0.3}, {1.0, 0.5}, {1.5, 0.5}, {1.8, 0.5}};
  std::vector<double> xs;
  for (double x : linspace(-5.0, 5.0, 50)) xs.push_back(x);
  double worst = 0.0;
  for (auto [a, r] : pairs) {
    const MeasureRep b{KnownLaw{law::BooleanStable{{a, r}, 1.0}}};
    for (double t : {0.3, 0.7}) {
      const double c_ = std::pow(t, 1.0 / a);
      for (double x : xs) {
        const double lhs = c_ * additive_boolean_power_density(b, t, x * c_);
        worst = std::max(worst, std::abs(lhs - boolean_stable_density(a, r, 1.0, x)));
      }
    }
  }
  c.metrics = {{"max_residual", worst}, {"threshold", 1e-10}};
  c.passed = worst < 1e-10;
  return c;
}

// rough single-core seconds, used for budget planning only
double expected_cost(int id) {
  static const double cost[] = {0, 0.5, 0.5, 1, 0.1, 0.1, 0.1, 1, 1, 6, 0.1, 0.5, 0.1};
  return cost[id];
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult c;
  try {
    switch (id) {
      case 1: c = crit1(); break;
      case 2: c = crit2(); break;
      case 3: c = crit3(); break;
      case 4: c = crit4(); break;
      case 5: c = crit5(); break;
      case 6: c = crit6(); break;
      case 7: c = crit7(); break;
      case 8: c = crit8(); break;
      case 9: c = crit9(seed); break;
      case 10: c = crit10(); break;
      case 11: c = crit11(); break;
      case 12: c = crit12(); break;
      default: throw Error(ErrorKind::Domain, "criteria are numbered 1.." + std::to_string(kCriterionCount));
    }
  } catch (const Error& e) {
    if (id < 1 || id > kCriterionCount) throw;
    c.id = id;
    c.title = kTitles[id - 1];
    c.passed = false;
    c.metrics = {{"error", e.what()}};
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

json VerifyReport::to_json() const {
  json rs = json::array();
  for (const auto& r : results)
    rs.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"skipped", r.skipped}, {"metrics", r.metrics}});
  return {{"complete", complete}, {"all_passed", all_passed}, {"criteria", rs}};
}

VerifyReport verify_all(double budget, std::uint64_t seed, int jobs) {
  VerifyReport rep;
  rep.results.resize(kCriterionCount);
  const auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
  std::atomic<int> next{1};
  std::mutex mu;
  auto worker = [&] {
    for (int id = next++; id <= kCriterionCount; id = next++) {
      bool fits;
      {
        std::lock_guard<std::mutex> lk(mu);
        fits = elapsed() + expected_cost(id) <= budget;
      }
      CriterionResult r;
      if (fits) {
        r = run_criterion(id, seed);
      } else {
        r.id = id;
        r.title = kTitles[id - 1];
        r.skipped = true;
        r.metrics = {{"reason", "budget"}};
      }
      std::lock_guard<std::mutex> lk(mu);
      rep.results[id - 1] = std::move(r);
    }
  };
  const int n = std::max(1, std::min(jobs, kCriterionCount));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& r : rep.results) {
    if (r.skipped) rep.complete = false;
    else if (!r.passed) rep.all_passed = false;
  }
  rep.seconds = elapsed();
  return rep;
}

}  // namespace freelevy
