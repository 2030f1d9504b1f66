#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ep2d/config.hpp"
#include "ep2d/norms.hpp"
#include "ep2d/verify.hpp"

namespace ep2d {

inline constexpr int kCsvVersion = 1;

// Fixed column order for a given config: t, h_<s> (ascending s), z_prime,
// z_norm, y_norm, linf_density, linf_gradv, e_sigma_<s>, e_physical,
// neutrality_residual, curl_residual, min_density.
std::vector<std::string> csv_columns(const RunConfig& c);
void write_csv_header(std::ostream& os, const RunConfig& c);
void write_csv_row(std::ostream& os, const RunConfig& c, const NormReport& r);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // NaN for empty cells
  std::string config_hash;
  int column(const std::string& name) const;  // -1 when absent
};
CsvTable read_csv(const std::string& path);

// Fits one CSV column against t over [t0, t1].
DecayFit refit_csv(const CsvTable& t, const std::string& column, double t0, double t1);

std::string format_double(double v);

struct SimulationResult {
  nlohmann::json summary;
  bool aborted = false;
};

// Runs the configured experiment and writes the configured outputs.
SimulationResult simulate(const RunConfig& c);

TrajectorySample to_sample(const NormReport& r);
nlohmann::json report_to_json(const NormReport& r);

// Static SVG line chart of CSV columns against t. log_axes drops rows with
// t <= 0 or nonpositive values.
std::string svg_chart(const CsvTable& t, const std::vector<std::string>& columns, bool log_axes);

}  // namespace ep2d
