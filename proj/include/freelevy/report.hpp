#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "freelevy/boolean_small_time.hpp"
#include "freelevy/circle_wrap.hpp"
#include "freelevy/dt_randmat.hpp"
#include "freelevy/mellin_moments.hpp"

namespace freelevy {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  // 17 significant digits, one header line
  std::string str() const;
};

std::string fmt17(double v);

CsvTable limit_csv(const LimitTable& tab);                 // t,sup_distance
CsvTable moment_csv(const MomentTable& tab);               // gamma,t,value,limit,abs_err
CsvTable unitary_csv(const UnitaryTable& tab);             // t,n,value,limit,abs_err
CsvTable dt_moment_csv(const std::vector<MomentRow>& rows);  // n,empirical,stderr,theory
CsvTable histogram_csv(const LogSpectrum& s);              // bin_left,bin_right,density,theory_density
// x,density,limit_density
CsvTable overlay_csv(const GridDensity& d, const GridDensity& limit);

nlohmann::json to_json(const LimitTable& tab);
nlohmann::json to_json(const MomentTable& tab);
nlohmann::json to_json(const UnitaryTable& tab);
nlohmann::json to_json(const std::vector<MomentRow>& rows);
nlohmann::json to_json(const LogSpectrum& s);

// Creates parent directories as needed; throws Domain when the file cannot be written.
void write_text(const std::string& path, const std::string& body);

}  // namespace freelevy
