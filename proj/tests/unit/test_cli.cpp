#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ep2d/config.hpp"
#include "ep2d/report.hpp"
#include "ep2d/toml_lite.hpp"

using namespace ep2d;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ep2d_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& toml_text) {
  try {
    parse_config(toml_text, false);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

// numbers within rel, everything else exact; config_hash skipped (depends on output paths)
void compare_json(const json& got, const json& want, const std::string& where, double rel) {
  if (want.is_number() && got.is_number()) {
    const double a = got.get<double>(), b = want.get<double>();
    CHECK_MESSAGE(std::abs(a - b) <= rel * std::max(std::abs(b), 1e-300) + 1e-300, where << " " << a << " vs " << b);
    return;
  }
  REQUIRE_MESSAGE(got.type() == want.type(), where);
  if (want.is_object()) {
    for (auto it = want.begin(); it != want.end(); ++it) {
      if (it.key() == "config_hash") continue;
      REQUIRE_MESSAGE(got.contains(it.key()), (where + "." + it.key()));
      compare_json(got[it.key()], it.value(), where + "." + it.key(), rel);
    }
    CHECK(got.size() == want.size());
  } else if (want.is_array()) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
      compare_json(got[i], want[i], where + "[" + std::to_string(i) + "]", rel);
  } else {
    CHECK_MESSAGE(got == want, where);
  }
}

}  // namespace

TEST_CASE("toml subset round trip") {
  const std::string text = R"(# comment
top = 3
name = "x y"
[grid]
n = 64
L = 50.5
flags = [true, false]
[a.b]
c = -1e-3
list = [1, 2, 3]
)";
  const json j = toml::parse(text);
  CHECK(j["top"] == 3);
  CHECK(j["name"] == "x y");
  CHECK(j["grid"]["L"] == 50.5);
  CHECK(j["a"]["b"]["c"] == -1e-3);
  CHECK(j["a"]["b"]["list"].size() == 3);
  CHECK(toml::parse(toml::dump(j)) == j);
  CHECK_THROWS_AS(toml::parse("x = \n"), toml::ParseError);
  CHECK_THROWS_AS(toml::parse("[grid\n"), toml::ParseError);
}

TEST_CASE("config round trip") {
  const RunConfig c = load_config(EP2D_SOURCE_DIR "/configs/reference_small.toml");
  CHECK(c.n == 64);
  CHECK(c.init.kind == "gaussian_h");
  CHECK(parse_config(config_to_toml(c), false) == c);
  CHECK(parse_config(config_to_json(c).dump(), true) == c);
  CHECK(config_hash(parse_config(config_to_toml(c), false)) == config_hash(c));
  RunConfig d = c;
  d.stepper.dt = 0.025;
  CHECK(config_hash(d) != config_hash(c));
  for (const char* f : {"reference.toml", "linear_only.toml", "zero.toml"})
    CHECK_NOTHROW(load_config(std::string(EP2D_SOURCE_DIR "/configs/") + f));
}

TEST_CASE("validation errors name the key") {
  CHECK(error_of("[grid]\nn = 48\n").find("grid.n") == 0);
  CHECK(error_of("[grid]\nL = -1.0\n").find("grid.L") == 0);
  CHECK(error_of("[model]\nb = 0.0\n").find("model.b") == 0);
  CHECK(error_of("[init]\nkind = \"wave\"\n").find("init.kind") == 0);
  CHECK(error_of("[init]\nkind = \"file\"\n").find("init.path") == 0);
  CHECK(error_of("[stepper]\ndt = 0.3\nhorizon = 1.0\n").find("stepper.horizon") == 0);
  CHECK(error_of("[stepper]\nsample_stride = 0\n").find("stepper.sample_stride") == 0);
  CHECK(error_of("[norms]\nsigma_list = [3, 41]\n").find("norms.sigma_list") == 0);
  CHECK(error_of("[grid]\nnn = 64\n").find("grid.nn") == 0);
  CHECK(error_of("bogus = 1\n").find("bogus") == 0);
  CHECK(error_of("[grid]\nn = \"64\"\n").find("grid.n") == 0);
  CHECK(error_of("[output]\nfields_every = 2\n").find("output.fields_dir") == 0);
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), InputError);
}

TEST_CASE("zero amplitude run is an equilibrium") {
  const fs::path dir = scratch("zero");
  RunConfig c = load_config(EP2D_SOURCE_DIR "/configs/zero.toml");
  c.output.csv = (dir / "zero.csv").string();
  c.output.report = (dir / "zero.json").string();
  const SimulationResult r = simulate(c);
  CHECK_FALSE(r.aborted);
  CHECK(r.summary["status"] == "equilibrium");
  CHECK(r.summary["decay"]["density"].contains("skipped"));
  const CsvTable t = read_csv(c.output.csv);
  CHECK(t.config_hash == config_hash(c));
  CHECK(t.columns == csv_columns(c));
  CHECK(t.rows.size() == 3);
  for (const auto& row : t.rows)
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::string& name = t.columns[k];
      if (name == "t") continue;
      if (name == "min_density") CHECK(row[k] == 1.0);
      else CHECK(row[k] == 0.0);
    }
  CHECK(json::parse(slurp(c.output.report)) == r.summary);
}

TEST_CASE("linear run keeps the profile norm") {
  const fs::path dir = scratch("linear");
  RunConfig c = load_config(EP2D_SOURCE_DIR "/configs/linear_only.toml");
  c.output.csv = (dir / "lin.csv").string();
  c.output.report = "";
  const SimulationResult r = simulate(c);
  CHECK(r.summary["status"] == "ok");
  CHECK(r.summary["y_norm_constant"] == true);
  // the linear flow is unitary on every H^s
  const CsvTable t = read_csv(c.output.csv);
  const int h3 = t.column("h_3");
  REQUIRE(h3 > 0);
  for (const auto& row : t.rows) CHECK(row[h3] == doctest::Approx(t.rows[0][h3]).epsilon(1e-12));
}

TEST_CASE("missing output directory is an input error") {
  RunConfig c = load_config(EP2D_SOURCE_DIR "/configs/zero.toml");
  c.output.csv = "/nonexistent_dir_ep2d/x.csv";
  CHECK_THROWS_AS(simulate(c), InputError);
}

TEST_CASE("reference small summary matches golden") {
  const fs::path dir = scratch("golden");
  RunConfig c = load_config(EP2D_SOURCE_DIR "/configs/reference_small.toml");
  c.output.csv = (dir / "small.csv").string();
  c.output.report = "";
  const SimulationResult r = simulate(c);
  const json want = json::parse(slurp(EP2D_SOURCE_DIR "/tests/golden/reference_small.json"));
  compare_json(r.summary, want, "summary", 1e-9);

  const CsvTable t = read_csv(c.output.csv);
  const DecayFit f = refit_csv(t, "linf_density", 5.0, 12.5);
  CHECK(f.exponent == doctest::Approx(r.summary["decay"]["density"]["exponent"].get<double>()).epsilon(1e-12));
  CHECK_THROWS_AS(refit_csv(t, "no_such_column", 5.0, 12.5), InputError);
}

TEST_CASE("csv reader") {
  const fs::path dir = scratch("csv");
  {
    std::ofstream out(dir / "a.csv");
    out << "# ep2d-norms v1\n# config 0123456789abcdef\nt,x,y\n0,1,\n1,2.5,3\n";
  }
  const CsvTable t = read_csv((dir / "a.csv").string());
  CHECK(t.config_hash == "0123456789abcdef");
  CHECK(t.column("x") == 1);
  CHECK(t.column("nope") == -1);
  REQUIRE(t.rows.size() == 2);
  CHECK(std::isnan(t.rows[0][2]));
  CHECK(t.rows[1][1] == 2.5);
  {
    std::ofstream out(dir / "b.csv");
    out << "# ep2d-norms v9\nt\n0\n";
  }
  CHECK_THROWS_AS(read_csv((dir / "b.csv").string()), InputError);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("svg chart") {
  CsvTable t;
  t.columns = {"t", "v"};
  t.rows = {{0.0, 1.0}, {1.0, 0.5}, {3.0, 0.25}};
  const std::string lin = svg_chart(t, {"v"}, false);
  CHECK(lin.find("<svg") == 0);
  CHECK(lin.find("polyline") != std::string::npos);
  CHECK(lin.find(">v</text>") != std::string::npos);
  const std::string lg = svg_chart(t, {"v"}, true);
  CHECK(lg.find("log10") != std::string::npos);
  CHECK_THROWS_AS(svg_chart(t, {"w"}, false), InputError);
}
