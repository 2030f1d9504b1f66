#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ep2d/initial_data.hpp"
#include "ep2d/norms.hpp"
#include "ep2d/timestepper.hpp"

namespace ep2d {

struct NormsConfig {
  int N = 30;
  int N0 = 20;
  std::vector<int> sigma_list{3, 10};
  std::vector<int> h_orders{0, 3};
  double delta = 0.01;
  bool profile_norms = true;
  bool operator==(const NormsConfig&) const = default;
};

struct OutputConfig {
  std::string csv;          // NormReport rows; empty disables
  std::string report;       // summary JSON; empty disables
  std::string fields_dir;   // field dumps; used when fields_every > 0
  int fields_every = 0;     // in samples
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  int n = 64;
  double length = 50.0;
  double a = 1.0;
  double b = 4.0;
  InitRecipe init;
  StepperConfig stepper;
  NormsConfig norms;
  OutputConfig output;
  std::uint64_t seed = 1;
  bool operator==(const RunConfig&) const = default;
};

// Raises InputError naming the offending key (e.g. "grid.n: must be a power of two").
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig parse_config(const std::string& text, bool is_json);
// Format chosen by extension: .json is JSON, anything else TOML.
RunConfig load_config(const std::string& path);
std::string config_to_toml(const RunConfig& c);
// FNV-1a 64 of the canonical JSON, as 16 hex digits
std::string config_hash(const RunConfig& c);

}  // namespace ep2d
