#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ep2d/config.hpp"
#include "ep2d/field_io.hpp"
#include "ep2d/ledger.hpp"
#include "ep2d/normal_form.hpp"
#include "ep2d/report.hpp"
#include "ep2d/verify.hpp"

using namespace ep2d;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kRuntime = 2, kVerifyFail = 3 };

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ComplexUnknown load_unknown(const std::string& path) {
  return ComplexUnknown{to_frequency(read_field(path))};
}

// [[x, y], ...] in physical frequency units
std::vector<Vec2> load_frequencies(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("frequencies: ") + e.what());
  }
  if (!j.is_array()) throw InputError("frequencies: expected an array of [xi1, xi2] pairs");
  std::vector<Vec2> out;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw InputError("frequencies: expected an array of [xi1, xi2] pairs");
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

int cmd_simulate(const std::string& config_path) {
  const RunConfig c = load_config(config_path);
  const SimulationResult r = simulate(c);
  std::cout << r.summary.dump(2) << "\n";
  return r.aborted ? kRuntime : kOk;
}

int cmd_verify(const std::vector<std::string>& names, bool quick, std::uint64_t seed, const std::string& out) {
  const auto& reg = check_registry();
  for (const std::string& n : names) {
    if (!reg.count(n)) {
      std::cerr << "unknown check '" << n << "'; available:";
      for (const std::string& k : check_names()) std::cerr << " " << k;
      std::cerr << "\n";
      return kUsage;
    }
  }
  const std::vector<std::string> run = names.empty() ? check_names() : names;
  CheckOptions opt;
  opt.seed = seed;
  opt.quick = quick;
  json report = json::object();
  json checks = json::array();
  bool all = true;
  for (const std::string& n : run) {
    const CheckResult r = reg.at(n)(opt);
    std::cerr << (r.pass ? "PASS " : "FAIL ") << n << "\n";
    all = all && r.pass;
    checks.push_back(r.to_json());
  }
  report["seed"] = seed;
  report["quick"] = quick;
  report["checks"] = checks;
  report["pass"] = all;
  emit(report.dump(2) + "\n", out);
  return all ? kOk : kVerifyFail;
}

int cmd_normalform(const std::string& dump, const std::string& freq_path, double t, const std::string& out) {
  const ComplexUnknown U = load_unknown(dump);
  const std::vector<Vec2> xi = freq_path.empty() ? default_output_frequencies(U.grid()) : load_frequencies(freq_path);
  resolve_frequencies(U.grid(), xi);
  const auto w = w_profile(U, t, xi);
  const auto dw = w_derivative_direct(U, t, xi);
  const auto cubic = cubic_rhs(U, t, xi);
  std::ostringstream os;
  os << "xi1,xi2,w_re,w_im,dw_direct_re,dw_direct_im,cubic_re,cubic_im,residual\n";
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double scale = std::max(std::abs(dw[i]), std::abs(cubic[i]));
    const double res = scale == 0.0 ? 0.0 : std::abs(dw[i] - cubic[i]) / scale;
    os << format_double(xi[i].x) << "," << format_double(xi[i].y) << "," << format_double(w[i].real()) << ","
       << format_double(w[i].imag()) << "," << format_double(dw[i].real()) << "," << format_double(dw[i].imag())
       << "," << format_double(cubic[i].real()) << "," << format_double(cubic[i].imag()) << ","
       << format_double(res) << "\n";
  }
  emit(os.str(), out);
  return kOk;
}

int cmd_norms(const std::string& dump, double t, int n_top, int n0, const std::string& out) {
  const ComplexUnknown U = load_unknown(dump);
  ReportConfig rc;
  rc.n_top = n_top;
  rc.n0 = n0;
  emit(report_to_json(make_report(U, t, rc)).dump(2) + "\n", out);
  return kOk;
}

int cmd_decay_fit(const std::string& csv, const std::string& column, double t0, double t1) {
  const CsvTable table = read_csv(csv);
  json j = refit_csv(table, column, t0, t1).to_json();
  j["config_hash"] = table.config_hash;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_plot(const std::string& csv, const std::vector<std::string>& columns, bool log_axes, const std::string& out) {
  emit(svg_chart(read_csv(csv), columns, log_axes), out);
  return kOk;
}

int cmd_ledger(const std::string& path, const std::string& src) {
  const LedgerReport r = ledger_check(path, src);
  for (const std::string& p : r.problems) std::cerr << p << "\n";
  std::cout << json{{"pass", r.pass}, {"entries", r.entries}, {"implemented", r.implemented},
                    {"out_of_scope", r.out_of_scope}}
                   .dump(2)
            << "\n";
  return r.pass ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* th = std::getenv("EP2D_THREADS")) {
    const int n = std::atoi(th);
    if (n > 0) omp_set_num_threads(n);
  }

  CLI::App app{"ep2d: 2D electron Euler-Poisson small-data experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "run a configured experiment");
  sim->add_option("--config,-c", config_path, "TOML or JSON config")->required();

  std::vector<std::string> checks;
  bool quick = false;
  std::uint64_t seed = CheckOptions{}.seed;
  std::string out;
  auto* ver = app.add_subcommand("verify", "run verification checks (all when none named)");
  ver->add_option("--check", checks, "check name, repeatable");
  ver->add_flag("--quick", quick, "reduced sizes");
  ver->add_option("--seed", seed);
  ver->add_option("--out,-o", out, "report path (default stdout)");

  std::string dump, freqs;
  double t = 0.0;
  auto* nf = app.add_subcommand("normalform", "corrected profile and cubic residuals at chosen frequencies");
  nf->add_option("--dump", dump)->required();
  nf->add_option("--frequencies", freqs, "JSON array of [xi1, xi2]; default spread of lattice points");
  nf->add_option("--time", t, "time of the dump");
  nf->add_option("--out,-o", out);

  int n_top = 30, n0 = 20;
  auto* nm = app.add_subcommand("norms", "norms of one dump");
  nm->add_option("--dump", dump)->required();
  nm->add_option("--time", t);
  nm->add_option("--N", n_top);
  nm->add_option("--N0", n0);
  nm->add_option("--out,-o", out);

  std::string csv, column;
  double t0 = 1.0, t1 = 0.0;
  auto* df = app.add_subcommand("decay-fit", "refit a column of a norms CSV");
  df->add_option("--csv", csv)->required();
  df->add_option("--column", column)->required();
  df->add_option("--t0", t0);
  df->add_option("--t1", t1)->required();

  std::vector<std::string> columns;
  bool log_axes = false;
  auto* pl = app.add_subcommand("plot", "SVG line chart of CSV columns against t");
  pl->add_option("--csv", csv)->required();
  pl->add_option("--column", columns)->required();
  pl->add_flag("--log", log_axes);
  pl->add_option("--out,-o", out);

  std::string ledger_path, src_dir = ".";
  auto* lg = app.add_subcommand("ledger", "check the equation ledger");
  lg->add_option("--ledger", ledger_path)->required();
  lg->add_option("--source", src_dir, "repository root holding tests/");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return cmd_simulate(config_path);
    if (*ver) return cmd_verify(checks, quick, seed, out);
    if (*nf) return cmd_normalform(dump, freqs, t, out);
    if (*nm) return cmd_norms(dump, t, n_top, n0, out);
    if (*df) return cmd_decay_fit(csv, column, t0, t1);
    if (*pl) return cmd_plot(csv, columns, log_axes, out);
    if (*lg) return cmd_ledger(ledger_path, src_dir);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
