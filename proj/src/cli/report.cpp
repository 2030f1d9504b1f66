#include "ep2d/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "ep2d/field_io.hpp"

namespace ep2d {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<int> h_columns(const RunConfig& c) {
  std::set<int> s(c.norms.h_orders.begin(), c.norms.h_orders.end());
  s.insert(c.norms.N);
  return {s.begin(), s.end()};
}

std::vector<int> sigma_columns(const RunConfig& c) {
  std::set<int> s(c.norms.sigma_list.begin(), c.norms.sigma_list.end());
  return {s.begin(), s.end()};
}

}  // namespace

std::vector<std::string> csv_columns(const RunConfig& c) {
  std::vector<std::string> out{"t"};
  for (int s : h_columns(c)) out.push_back("h_" + std::to_string(s));
  for (const char* n : {"z_prime", "z_norm", "y_norm", "linf_density", "linf_gradv"}) out.push_back(n);
  for (int s : sigma_columns(c)) out.push_back("e_sigma_" + std::to_string(s));
  for (const char* n : {"e_physical", "neutrality_residual", "curl_residual", "min_density"}) out.push_back(n);
  return out;
}

void write_csv_header(std::ostream& os, const RunConfig& c) {
  os << "# ep2d-norms v" << kCsvVersion << "\n# config " << config_hash(c) << "\n";
  const auto cols = csv_columns(c);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
}

void write_csv_row(std::ostream& os, const RunConfig& c, const NormReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  auto in_map = [](const std::map<int, double>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? std::string() : format_double(it->second);
  };
  os << format_double(r.time);
  for (int s : h_columns(c)) os << "," << in_map(r.h_norms, s);
  os << "," << format_double(r.z_prime) << "," << opt(r.z_norm) << "," << opt(r.y_norm) << ","
     << format_double(r.linf_density) << "," << format_double(r.linf_gradv);
  for (int s : sigma_columns(c)) os << "," << in_map(r.e_sigma, s);
  os << "," << format_double(r.e_physical) << "," << format_double(r.diag.neutrality_residual) << ","
     << format_double(r.diag.curl_residual) << "," << format_double(r.diag.min_density) << "\n";
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open CSV '" + path + "'");
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# config ", 0) == 0) t.config_hash = line.substr(9);
      if (line.rfind("# ep2d-norms v", 0) == 0 && line.substr(14) != std::to_string(kCsvVersion))
        throw InputError("CSV version '" + line.substr(14) + "' not supported");
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    if (cells.size() != t.columns.size()) throw InputError("CSV row has the wrong number of cells");
    std::vector<double> row;
    for (const std::string& c : cells) {
      if (c.empty() || c == "nan") {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw InputError("CSV cell '" + c + "' is not a number");
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw InputError("CSV has no header row");
  return t;
}

DecayFit refit_csv(const CsvTable& t, const std::string& column, double t0, double t1) {
  const int ct = t.column("t"), cv = t.column(column);
  if (ct < 0) throw InputError("CSV lacks a 't' column");
  if (cv < 0) throw InputError("CSV lacks column '" + column + "'");
  std::vector<double> times, values;
  for (const auto& r : t.rows) {
    if (std::isnan(r[cv])) continue;
    times.push_back(r[ct]);
    values.push_back(r[cv]);
  }
  return fit_decay(column, times, values, t0, t1);
}

TrajectorySample to_sample(const NormReport& r) {
  TrajectorySample s;
  s.t = r.time;
  s.linf_density = r.linf_density;
  s.linf_gradv = r.linf_gradv;
  s.e_physical = r.e_physical;
  s.z_prime = r.z_prime;
  s.diag = r.diag;
  s.e_sigma = r.e_sigma;
  return s;
}

namespace {

void ensure_parent(const std::string& path, const std::string& key) {
  const std::filesystem::path p(path);
  const auto parent = p.parent_path();
  std::error_code ec;
  if (!parent.empty() && !std::filesystem::is_directory(parent, ec))
    throw InputError(key + ": directory '" + parent.string() + "' does not exist");
}

json fit_or_null(const std::vector<TrajectorySample>& rows, double t0, double t1,
                 double TrajectorySample::*field, const char* name) {
  std::vector<double> t, v;
  bool nonzero = false;
  for (const auto& r : rows) {
    t.push_back(r.t);
    v.push_back(r.*field);
    if (r.t >= t0 && r.t <= t1 && r.*field != 0.0) nonzero = true;
  }
  if (!nonzero) return {{"skipped", "observable vanishes"}};
  try {
    return fit_decay(name, t, v, t0, t1).to_json();
  } catch (const InputError& e) {
    return {{"skipped", e.what()}};
  }
}

}  // namespace

SimulationResult simulate(const RunConfig& c) {
  if (!c.output.csv.empty()) ensure_parent(c.output.csv, "output.csv");
  if (!c.output.report.empty()) ensure_parent(c.output.report, "output.report");
  if (c.output.fields_every > 0) {
    std::error_code ec;
    std::filesystem::create_directories(c.output.fields_dir, ec);
    if (ec) throw InputError("output.fields_dir: cannot create '" + c.output.fields_dir + "'");
  }
  const GridPtr g = Grid::make(c.n, c.length, c.a, c.b);
  const ComplexUnknown U0 = make_initial_unknown(g, c.init);

  std::ofstream csv;
  if (!c.output.csv.empty()) {
    csv.open(c.output.csv, std::ios::binary);
    if (!csv) throw InputError("output.csv: cannot write '" + c.output.csv + "'");
    write_csv_header(csv, c);
    csv.flush();
  }

  ReportConfig rc;
  rc.n_top = c.norms.N;
  rc.n0 = c.norms.N0;
  rc.h_orders = c.norms.h_orders;
  rc.sigma_list = c.norms.sigma_list;
  rc.profile_norms = c.norms.profile_norms;

  std::vector<NormReport> history;
  std::size_t sample = 0;
  auto observer = [&](const Snapshot& s) {
    NormReport r = make_report(s.U, s.time, rc);
    if (csv.is_open()) {
      write_csv_row(csv, c, r);
      csv.flush();
    }
    if (c.output.fields_every > 0 && sample % static_cast<std::size_t>(c.output.fields_every) == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "field_%08zu.bin", s.step);
      write_field((std::filesystem::path(c.output.fields_dir) / name).string(), s.U.u);
    }
    ++sample;
    history.push_back(std::move(r));
  };
  const RunSummary rs = run(U0, c.stepper, {observer});

  std::vector<TrajectorySample> rows;
  for (const NormReport& r : history) rows.push_back(to_sample(r));

  json summary;
  summary["config_hash"] = config_hash(c);
  double umax = 0.0;
  for (const cplx& z : U0.u.values()) umax = std::max(umax, std::abs(z));
  summary["status"] = rs.aborted ? "aborted" : (umax == 0.0 ? "equilibrium" : "ok");
  summary["final_time"] = rs.final_time;
  summary["steps"] = rs.steps;
  summary["samples"] = history.size();
  summary["beyond_horizon"] = rs.beyond_horizon;
  summary["stability_warning"] = rs.stability_warning;
  if (rs.aborted) summary["abort_message"] = rs.abort_message;

  double e0 = history.empty() ? 0.0 : history.front().e_physical, drift = 0.0;
  double neu = 0.0, curl = 0.0, mind = 1.0;
  for (const NormReport& r : history) {
    if (e0 > 0.0) drift = std::max(drift, std::abs(r.e_physical - e0) / e0);
    neu = std::max(neu, r.diag.neutrality_residual);
    curl = std::max(curl, r.diag.curl_residual);
    mind = std::min(mind, r.diag.min_density);
  }
  summary["energy"] = {{"initial", e0}, {"max_relative_drift", drift}};
  summary["diagnostics"] = {
      {"max_neutrality_residual", neu}, {"max_curl_residual", curl}, {"min_density", mind}};

  const double t0 = 5.0, t1 = rs.final_time;
  summary["decay"] = {
      {"density", fit_or_null(rows, t0, t1, &TrajectorySample::linf_density, "density_sup")},
      {"gradv", fit_or_null(rows, t0, t1, &TrajectorySample::linf_gradv, "gradv_sup")}};

  json growth = json::array();
  for (int s : sigma_columns(c)) growth.push_back(energy_growth_monitor(rows, s).to_json());
  summary["energy_growth"] = growth;

  if (c.norms.profile_norms && !history.empty()) {
    double ymin = INFINITY, ymax = 0.0;
    for (const NormReport& r : history) {
      ymin = std::min(ymin, *r.y_norm);
      ymax = std::max(ymax, *r.y_norm);
    }
    summary["y_norm_constant"] = ymax == 0.0 || (ymax - ymin) <= 1e-10 * ymax;
    summary["x_norm"] = x_norm_tracker(history, c.norms.N, c.norms.N0, c.norms.delta);
  }

  if (!c.output.report.empty()) {
    std::ofstream out(c.output.report, std::ios::binary);
    if (!out) throw InputError("output.report: cannot write '" + c.output.report + "'");
    out << summary.dump(2) << "\n";
  }
  return {summary, rs.aborted};
}

}  // namespace ep2d

namespace ep2d {

std::string svg_chart(const CsvTable& t, const std::vector<std::string>& columns, bool log_axes) {
  const int ct = t.column("t");
  if (ct < 0) throw InputError("CSV lacks a 't' column");
  if (columns.empty()) throw InputError("svg: no columns selected");
  auto tx = [&](double v) { return log_axes ? std::log10(v) : v; };
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const std::string& name : columns) {
    const int cv = t.column(name);
    if (cv < 0) throw InputError("CSV lacks column '" + name + "'");
    Series s{name, {}};
    for (const auto& r : t.rows) {
      const double x = r[ct], y = r[cv];
      if (!std::isfinite(y) || (log_axes && (x <= 0.0 || y <= 0.0))) continue;
      s.pts.emplace_back(tx(x), tx(y));
      x0 = std::min(x0, tx(x));
      x1 = std::max(x1, tx(x));
      y0 = std::min(y0, tx(y));
      y1 = std::max(y1, tx(y));
    }
    series.push_back(std::move(s));
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  const double W = 640, H = 400, m = 50;
  auto px = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
  auto py = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect x=\"" << m << "\" y=\"" << m << "\" width=\"" << W - 2 * m << "\" height=\"" << H - 2 * m
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s t in [%.3g, %.3g]", log_axes ? "log10" : "", x0, x1);
  os << "<text x=\"" << m << "\" y=\"" << H - 15 << "\" font-size=\"12\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%s value in [%.3g, %.3g]", log_axes ? "log10" : "", y0, y1);
  os << "<text x=\"" << m << "\" y=\"30\" font-size=\"12\">" << buf << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* col = colors[i % 5];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
    for (const auto& [x, y] : series[i].pts) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
      os << buf;
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - m - 120 << "\" y=\"" << m + 16 * (i + 1) << "\" font-size=\"12\" fill=\"" << col
       << "\">" << series[i].name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ep2d

namespace ep2d {

nlohmann::json report_to_json(const NormReport& r) {
  nlohmann::json h = nlohmann::json::object(), e = nlohmann::json::object();
  for (const auto& [s, v] : r.h_norms) h[std::to_string(s)] = v;
  for (const auto& [s, v] : r.e_sigma) e[std::to_string(s)] = v;
  nlohmann::json j{{"t", r.time},
                   {"h_norms", h},
                   {"z_prime", r.z_prime},
                   {"linf_density", r.linf_density},
                   {"linf_gradv", r.linf_gradv},
                   {"e_sigma", e},
                   {"e_physical", r.e_physical},
                   {"neutrality_residual", r.diag.neutrality_residual},
                   {"curl_residual", r.diag.curl_residual},
                   {"min_density", r.diag.min_density}};
  if (r.z_norm) j["z_norm"] = *r.z_norm;
  if (r.y_norm) {
    j["y_norm"] = *r.y_norm;
    j["y_order"] = r.y_order;
  }
  return j;
}

}  // namespace ep2d
