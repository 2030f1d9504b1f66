#include "ep2d/ledger.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "ep2d/common.hpp"
#include "ep2d/toml_lite.hpp"
#include "ep2d/verify.hpp"

namespace ep2d {

using nlohmann::json;

const std::vector<std::string>& operation_catalog() {
  static const std::vector<std::string> ops{
      "spectral_core.to_frequency", "spectral_core.to_physical", "spectral_core.apply_multiplier",
      "spectral_core.dealias", "spectral_core.lp_project", "spectral_core.lp_project_interval",
      "spectral_core.write_field", "spectral_core.read_field",
      "dispersion.lambda_eval", "dispersion.phase_bilinear", "dispersion.phase_trilinear",
      "dispersion.propagate_linear", "dispersion.pair_floor_ratio", "dispersion.sep_lower_ratio",
      "dispersion.sep_upper_ratio", "dispersion.phase_grad_ratio", "dispersion.triple_floor_ratio",
      "dispersion.certify_phase_bounds",
      "model.to_unknown", "model.to_state", "model.split_real_imag", "model.nonlinearity_physical",
      "model.nonlinearity_spectral", "model.conserved_energy", "model.diagnostics",
      "model.make_initial_state",
      "norms.sobolev_norm", "norms.z_norm", "norms.z_prime_norm", "norms.y_norm",
      "norms.weighted_sobolev_square", "norms.energy_sigma", "norms.energy_sigma_cubic",
      "norms.linf_observables", "norms.make_report", "norms.x_norm_tracker",
      "normal_form.bilinear_symbol_eval", "normal_form.flip_symbol", "normal_form.cubic_symbol_eval",
      "normal_form.profile_of", "normal_form.w_profile", "normal_form.w_derivative_direct",
      "normal_form.cubic_rhs",
      "timestepper.step", "timestepper.run", "timestepper.epsilon_convergence_study",
      "verify.fit_decay", "verify.dispersive_decay_check", "verify.z_to_zprime_decay_check",
      "verify.nonlinear_decay_experiment", "verify.energy_growth_monitor",
      "verify.multiplier_y_boundedness_check",
      "cli.simulate", "cli.load_config",
  };
  return ops;
}

std::vector<std::string> scan_test_names(const std::string& source_dir) {
  std::vector<std::string> names;
  static const std::regex re(R"(TEST_CASE\s*\(\s*"([^"]*)\")");
  for (const char* sub : {"tests/unit", "tests/acceptance"}) {
    const std::filesystem::path dir = std::filesystem::path(source_dir) / sub;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) continue;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
      if (e.path().extension() != ".cpp") continue;
      std::ifstream in(e.path());
      std::ostringstream ss;
      ss << in.rdbuf();
      const std::string text = ss.str();
      for (std::sregex_iterator it(text.begin(), text.end(), re), end; it != end; ++it)
        names.push_back((*it)[1].str());
    }
  }
  return names;
}

LedgerReport ledger_check_text(const std::string& toml_text, const std::vector<std::string>& test_names) {
  LedgerReport r;
  json doc;
  try {
    doc = toml::parse(toml_text);
  } catch (const toml::ParseError& e) {
    r.problems.push_back(std::string("ledger: ") + e.what());
    return r;
  }
  const std::set<std::string> ops(operation_catalog().begin(), operation_catalog().end());
  const std::set<std::string> tests(test_names.begin(), test_names.end());
  const auto checks = check_names();
  const std::set<std::string> check_set(checks.begin(), checks.end());

  if (!doc.contains("entry") || !doc["entry"].is_array()) {
    r.problems.push_back("ledger: no [[entry]] tables");
    return r;
  }
  std::set<std::string> seen;
  for (const json& e : doc["entry"]) {
    ++r.entries;
    const std::string id = e.value("id", "");
    const std::string who = id.empty() ? "entry #" + std::to_string(r.entries) : "'" + id + "'";
    if (id.empty()) r.problems.push_back(who + ": missing id");
    else if (!seen.insert(id).second) r.problems.push_back(who + ": duplicate id");
    if (e.value("statement", "").empty()) r.problems.push_back(who + ": missing statement");
    const std::string status = e.value("status", "");
    if (status == "implemented") {
      ++r.implemented;
      const std::string op = e.value("operation", "");
      if (op.empty()) r.problems.push_back(who + ": implemented entry needs an operation");
      else if (!ops.count(op)) r.problems.push_back(who + ": unknown operation '" + op + "'");
      const json t = e.value("tests", json::array());
      if (!t.is_array() || t.empty()) r.problems.push_back(who + ": implemented entry needs tests");
      for (const json& name : t) {
        const std::string s = name.is_string() ? name.get<std::string>() : "";
        if (s.rfind("check:", 0) == 0) {
          if (!check_set.count(s.substr(6))) r.problems.push_back(who + ": unknown check '" + s + "'");
        } else if (!tests.count(s)) {
          r.problems.push_back(who + ": no test named '" + s + "'");
        }
      }
    } else if (status == "out_of_scope") {
      ++r.out_of_scope;
      if (e.value("reason", "").empty()) r.problems.push_back(who + ": out_of_scope entry needs a reason");
    } else {
      r.problems.push_back(who + ": status must be implemented or out_of_scope");
    }
  }
  if (doc.contains("expected_entries")) {
    const int want = doc["expected_entries"].get<int>();
    if (want != r.entries)
      r.problems.push_back("ledger: " + std::to_string(r.entries) + " entries, expected " + std::to_string(want));
  }
  r.pass = r.problems.empty();
  return r;
}

LedgerReport ledger_check(const std::string& ledger_path, const std::string& source_dir) {
  std::ifstream in(ledger_path);
  if (!in) throw InputError("ledger: cannot open '" + ledger_path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ledger_check_text(ss.str(), scan_test_names(source_dir));
}

}  // namespace ep2d
