#include "freelevy/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "freelevy/error.hpp"

namespace freelevy {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvTable::str() const {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + fmt17(r[i]);
    out += '\n';
  }
  return out;
}

CsvTable limit_csv(const LimitTable& tab) {
  CsvTable c{{"t", "sup_distance"}, {}};
  for (const auto& r : tab.rows) c.rows.push_back({r.t, r.sup_distance});
  return c;
}

CsvTable moment_csv(const MomentTable& tab) {
  CsvTable c{{"gamma", "t", "value", "limit", "abs_err"}, {}};
  for (size_t i = 0; i < tab.gammas.size(); ++i)
    c.rows.push_back({tab.gammas[i], tab.t, tab.values[i], tab.limit_values[i],
                      std::abs(tab.values[i] - tab.limit_values[i])});
  return c;
}

CsvTable unitary_csv(const UnitaryTable& tab) {
  CsvTable c{{"t", "n", "value", "limit", "abs_err"}, {}};
  for (const auto& r : tab.rows) c.rows.push_back({r.t, double(r.n), r.value, r.limit, r.abs_err});
  return c;
}

CsvTable dt_moment_csv(const std::vector<MomentRow>& rows) {
  CsvTable c{{"n", "empirical", "stderr", "theory"}, {}};
  for (const auto& r : rows) c.rows.push_back({double(r.n), r.empirical, r.stderr_, r.theory});
  return c;
}

CsvTable histogram_csv(const LogSpectrum& s) {
  CsvTable c{{"bin_left", "bin_right", "density", "theory_density"}, {}};
  for (const auto& b : s.bins) c.rows.push_back({b.left, b.right, b.density, b.theory});
  return c;
}

CsvTable overlay_csv(const GridDensity& d, const GridDensity& limit) {
  CsvTable c{{"x", "density", "limit_density"}, {}};
  for (size_t i = 0; i < d.grid.size(); ++i) c.rows.push_back({d.grid[i], d.values[i], interpolate(limit, d.grid[i])});
  return c;
}

json to_json(const LimitTable& tab) {
  json rows = json::array();
  for (const auto& r : tab.rows) rows.push_back({{"t", r.t}, {"sup_distance", r.sup_distance}});
  return {{"rows", rows},     {"decreasing", tab.decreasing}, {"beta", tab.beta}, {"gamma", tab.gamma},
          {"alpha", tab.alpha}, {"rho", tab.rho},               {"r", tab.r}};
}

json to_json(const MomentTable& tab) {
  json rows = json::array();
  for (size_t i = 0; i < tab.gammas.size(); ++i)
    rows.push_back({{"gamma", tab.gammas[i]},
                    {"value", tab.values[i]},
                    {"limit", tab.limit_values[i]},
                    {"abs_err", std::abs(tab.values[i] - tab.limit_values[i])}});
  return {{"t", tab.t}, {"rows", rows}};
}

json to_json(const UnitaryTable& tab) {
  json rows = json::array();
  for (const auto& r : tab.rows)
    rows.push_back({{"t", r.t}, {"n", r.n}, {"value", r.value}, {"limit", r.limit}, {"abs_err", r.abs_err}});
  return {{"rows", rows}, {"decreasing", tab.decreasing}};
}

json to_json(const std::vector<MomentRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"n", r.n}, {"empirical", r.empirical}, {"stderr", r.stderr_}, {"theory", r.theory}});
  return out;
}

json to_json(const LogSpectrum& s) {
  return {{"sup_distance", s.sup_distance},
          {"dropped", s.dropped},
          {"total", s.total},
          {"degenerate_warning", s.degenerate},
          {"max_log_eigenvalue", s.max_log_eigenvalue}};
}

void write_text(const std::string& path, const std::string& body) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream f(p);
  if (!f) throw Error(ErrorKind::Domain, "cannot write " + path);
  f << body;
  if (!f) throw Error(ErrorKind::Domain, "write failed for " + path);
}

}  // namespace freelevy
