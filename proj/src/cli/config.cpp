#include "ep2d/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ep2d/toml_lite.hpp"

namespace ep2d {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) { throw InputError(key + ": " + why); }

// Reads one table, rejecting unknown keys.
struct Table {
  const json& j;
  std::string prefix;
  std::set<std::string> used;

  Table(const json& obj, std::string p) : j(obj), prefix(std::move(p)) {
    if (!j.is_object()) bad(prefix.empty() ? "config" : prefix, "must be a table");
  }
  std::string full(const std::string& k) const { return prefix.empty() ? k : prefix + "." + k; }
  const json* get(const std::string& k) {
    used.insert(k);
    auto it = j.find(k);
    return it == j.end() ? nullptr : &*it;
  }
  void real(const std::string& k, double& out) {
    if (const json* v = get(k)) {
      if (!v->is_number()) bad(full(k), "must be a number");
      out = v->get<double>();
    }
  }
  template <class I>
  void integer(const std::string& k, I& out) {
    if (const json* v = get(k)) {
      if (!v->is_number_integer()) bad(full(k), "must be an integer");
      out = v->get<I>();
    }
  }
  void boolean(const std::string& k, bool& out) {
    if (const json* v = get(k)) {
      if (!v->is_boolean()) bad(full(k), "must be true or false");
      out = v->get<bool>();
    }
  }
  void string(const std::string& k, std::string& out) {
    if (const json* v = get(k)) {
      if (!v->is_string()) bad(full(k), "must be a string");
      out = v->get<std::string>();
    }
  }
  void int_list(const std::string& k, std::vector<int>& out) {
    if (const json* v = get(k)) {
      if (!v->is_array()) bad(full(k), "must be an array of integers");
      out.clear();
      for (const json& e : *v) {
        if (!e.is_number_integer()) bad(full(k), "must be an array of integers");
        out.push_back(e.get<int>());
      }
    }
  }
  const json* sub(const std::string& k) {
    const json* v = get(k);
    if (v && !v->is_object()) bad(full(k), "must be a table");
    return v;
  }
  void done() const {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!used.count(it.key())) bad(full(it.key()), "unknown key");
  }
};

void validate(const RunConfig& c) {
  if (c.n < 8 || (c.n & (c.n - 1)) != 0) bad("grid.n", "must be a power of two >= 8");
  if (!(c.length > 0.0) || !std::isfinite(c.length)) bad("grid.L", "must be positive");
  if (!(c.a > 0.0) || !std::isfinite(c.a)) bad("model.a", "must be positive");
  if (!(c.b > 0.0) || !std::isfinite(c.b)) bad("model.b", "must be positive");
  static const std::set<std::string> kinds{"gaussian_rho", "gaussian_h", "mode_pair", "file", "random"};
  if (!kinds.count(c.init.kind)) bad("init.kind", "unknown recipe '" + c.init.kind + "'");
  if (!std::isfinite(c.init.amplitude)) bad("init.amplitude", "must be finite");
  if (!(c.init.width > 0.0)) bad("init.width", "must be positive");
  if (c.init.kind == "file" && c.init.path.empty()) bad("init.path", "required for kind = \"file\"");
  if (!(c.stepper.dt > 0.0) || !std::isfinite(c.stepper.dt)) bad("stepper.dt", "must be positive");
  if (!(c.stepper.epsilon >= 0.0)) bad("stepper.epsilon", "must be nonnegative");
  if (!(c.stepper.horizon >= 0.0) || !std::isfinite(c.stepper.horizon)) bad("stepper.horizon", "must be nonnegative");
  const double q = c.stepper.horizon / c.stepper.dt;
  if (std::abs(q - std::round(q)) > 1e-6) bad("stepper.horizon", "must be a multiple of stepper.dt");
  if (c.stepper.sample_stride < 1) bad("stepper.sample_stride", "must be at least 1");
  if (!(c.stepper.stability_budget > 0.0)) bad("stepper.stability_budget", "must be positive");
  if (c.norms.N < 0) bad("norms.N", "must be nonnegative");
  if (c.norms.N0 < 0) bad("norms.N0", "must be nonnegative");
  for (int s : c.norms.sigma_list)
    if (s < 0 || s > kMaxEnergyOrder) bad("norms.sigma_list", "entries must lie in [0, 40]");
  for (int s : c.norms.h_orders)
    if (s < 0) bad("norms.h_orders", "entries must be nonnegative");
  if (!(c.norms.delta >= 0.0)) bad("norms.delta", "must be nonnegative");
  if (c.output.fields_every < 0) bad("output.fields_every", "must be nonnegative");
  if (c.output.fields_every > 0 && c.output.fields_dir.empty())
    bad("output.fields_dir", "required when output.fields_every > 0");
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  Table top(j, "");
  if (const json* g = top.sub("grid")) {
    Table t(*g, "grid");
    t.integer("n", c.n);
    t.real("L", c.length);
    t.done();
  }
  if (const json* m = top.sub("model")) {
    Table t(*m, "model");
    t.real("a", c.a);
    t.real("b", c.b);
    t.done();
  }
  if (const json* in = top.sub("init")) {
    Table t(*in, "init");
    t.string("kind", c.init.kind);
    t.real("amplitude", c.init.amplitude);
    t.real("width", c.init.width);
    std::vector<int> kv{c.init.k_vector[0], c.init.k_vector[1]};
    t.int_list("k_vector", kv);
    if (kv.size() != 2) bad("init.k_vector", "must have two entries");
    c.init.k_vector = {kv[0], kv[1]};
    t.string("path", c.init.path);
    t.done();
  }
  if (const json* s = top.sub("stepper")) {
    Table t(*s, "stepper");
    t.real("dt", c.stepper.dt);
    t.real("epsilon", c.stepper.epsilon);
    t.real("horizon", c.stepper.horizon);
    t.integer("sample_stride", c.stepper.sample_stride);
    t.boolean("nonlinear", c.stepper.nonlinear);
    t.real("stability_budget", c.stepper.stability_budget);
    t.done();
  }
  if (const json* nm = top.sub("norms")) {
    Table t(*nm, "norms");
    t.integer("N", c.norms.N);
    t.integer("N0", c.norms.N0);
    t.int_list("sigma_list", c.norms.sigma_list);
    t.int_list("h_orders", c.norms.h_orders);
    t.real("delta", c.norms.delta);
    t.boolean("profile_norms", c.norms.profile_norms);
    t.done();
  }
  if (const json* o = top.sub("output")) {
    Table t(*o, "output");
    t.string("csv", c.output.csv);
    t.string("report", c.output.report);
    t.string("fields_dir", c.output.fields_dir);
    t.integer("fields_every", c.output.fields_every);
    t.done();
  }
  top.integer("seed", c.seed);
  top.done();
  c.init.seed = c.seed;
  validate(c);
  return c;
}

json config_to_json(const RunConfig& c) {
  return {{"grid", {{"n", c.n}, {"L", c.length}}},
          {"model", {{"a", c.a}, {"b", c.b}}},
          {"init",
           {{"kind", c.init.kind},
            {"amplitude", c.init.amplitude},
            {"width", c.init.width},
            {"k_vector", {c.init.k_vector[0], c.init.k_vector[1]}},
            {"path", c.init.path}}},
          {"stepper",
           {{"dt", c.stepper.dt},
            {"epsilon", c.stepper.epsilon},
            {"horizon", c.stepper.horizon},
            {"sample_stride", c.stepper.sample_stride},
            {"nonlinear", c.stepper.nonlinear},
            {"stability_budget", c.stepper.stability_budget}}},
          {"norms",
           {{"N", c.norms.N},
            {"N0", c.norms.N0},
            {"sigma_list", c.norms.sigma_list},
            {"h_orders", c.norms.h_orders},
            {"delta", c.norms.delta},
            {"profile_norms", c.norms.profile_norms}}},
          {"output",
           {{"csv", c.output.csv},
            {"report", c.output.report},
            {"fields_dir", c.output.fields_dir},
            {"fields_every", c.output.fields_every}}},
          {"seed", c.seed}};
}

RunConfig parse_config(const std::string& text, bool is_json) {
  json j;
  if (is_json) {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("config: ") + e.what());
    }
  } else {
    try {
      j = toml::parse(text);
    } catch (const toml::ParseError& e) {
      throw InputError(std::string("config: ") + e.what());
    }
  }
  return config_from_json(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return parse_config(ss.str(), is_json);
}

std::string config_to_toml(const RunConfig& c) { return toml::dump(config_to_json(c)); }

std::string config_hash(const RunConfig& c) {
  const std::string s = config_to_json(c).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ep2d
