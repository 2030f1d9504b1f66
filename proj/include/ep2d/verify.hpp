#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ep2d/initial_data.hpp"
#include "ep2d/norms.hpp"
#include "ep2d/symbols.hpp"
#include "ep2d/timestepper.hpp"

namespace ep2d {

// Least squares of log(value) against log(1 + t) on [t0, t1].
struct DecayFit {
  std::string observable;
  double t0 = 0.0, t1 = 0.0;
  double exponent = 0.0;
  double half_width = 0.0;  // 95% Student-t half width of the slope
  double log_prefactor = 0.0;
  std::size_t samples = 0;
  nlohmann::json to_json() const;
};

// Needs t1 > t0 >= 1, at least 10 samples per decade of (1+t), positive values.
DecayFit fit_decay(const std::string& name, const std::vector<double>& times,
                   const std::vector<double>& values, double t0, double t1);

// n+1 times log spaced over [t0, t1] (t0 > 0), plus t = 0 when with_zero
std::vector<double> log_times(double t0, double t1, int n, bool with_zero = true);

struct DispersiveDecay {
  DecayFit fit;
  std::vector<double> times;
  std::vector<double> sup;    // ||P_l e^{-it Lambda} f||_inf
  std::vector<double> ratio;  // sup (1+t) / ((1 + 2^{2l}) ||f||_1)
  double max_ratio = 0.0;
  double l1 = 0.0;
};

// times must stay below the wraparound horizon and span 1.5 decades of (1+t)
DispersiveDecay dispersive_decay_check(int l, const SpectralField& f, const std::vector<double>& times,
                                       double fit_t0, double fit_t1);

struct ZDecay {
  DecayFit fit;
  std::vector<double> times;
  std::vector<double> z_prime;  // ||e^{-it Lambda} f||_{Z'}
  std::vector<double> ratio;    // z_prime (1+t) / ||f||_Z
  double z_norm = 0.0;
  double max_ratio = 0.0;
};

ZDecay z_to_zprime_decay_check(const SpectralField& f, const std::vector<double>& times,
                               double fit_t0, double fit_t1, const NormWeights& w = {});

// One sampled time along a run. Heavy fields are filled only on some samples.
struct TrajectorySample {
  double t = 0.0;
  double linf_density = 0.0;
  double linf_gradv = 0.0;
  double e_physical = 0.0;
  double z_prime = 0.0;
  Diagnostics diag;
  std::map<int, double> e_sigma;
};

struct RecorderConfig {
  int light_stride = 1;          // in observer calls
  int heavy_stride = 10;         // in light samples
  std::vector<int> sigma_list{3};
  NormWeights weights;
};

// Observer that appends TrajectorySample rows.
Observer trajectory_recorder(std::vector<TrajectorySample>& out, const RecorderConfig& cfg = {});

struct NonlinearDecay {
  std::optional<DecayFit> density;  // empty when the observable vanishes
  std::optional<DecayFit> gradv;
  bool shock_flag = false;          // min density <= 0 somewhere
  double min_density = 1.0;
};

NonlinearDecay nonlinear_decay_fit(const std::vector<TrajectorySample>& traj, double t0, double t1);

struct NonlinearDecayConfig {
  int n = 256;
  double length = 200.0;
  double a = 1.0, b = 4.0;
  InitRecipe init = gaussian_h_recipe(1e-3, 1.0);
  StepperConfig stepper{0.01, 0.0, 50.0, 25};
  double fit_t0 = 5.0;
};

NonlinearDecay nonlinear_decay_experiment(const NonlinearDecayConfig& cfg,
                                          std::vector<TrajectorySample>* traj = nullptr);

struct EnergyGrowth {
  int sigma = 0;
  double min_constant = 0.0;     // smallest C with E(t) - E(s) <= C int_s^t Z' E
  double delta_eff = 0.0;        // max_t log(E(t)/E(0)) / log(1+t), at least 0
  double delta_gronwall = 0.0;   // max_t C int_0^t Z' / log(1+t)
  std::size_t samples = 0;
  nlohmann::json to_json() const;
};

// Uses the samples that carry E_sigma; integrals by the trapezoid rule.
EnergyGrowth energy_growth_monitor(const std::vector<TrajectorySample>& traj, int sigma);

struct MultiplierReport {
  std::string name;
  std::size_t samples = 0;
  double max_ratio = 0.0;
  std::uint64_t witness_seed = 0;
};

// max over random localized real fields of ||F^{-1}(m f^)||_{Y^{n0}} / ||f||_{Y^{n0}}
MultiplierReport multiplier_y_boundedness_check(const Multiplier& m, const GridPtr& g, int samples,
                                                std::uint64_t seed, int n0 = 20,
                                                const NormWeights& w = {});

// Outcome of a named check.
struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::json measured;
  nlohmann::json witness;
  nlohmann::json to_json() const;
};

struct CheckOptions {
  std::uint64_t seed = 20240611;
  bool quick = false;  // reduced sizes for smoke runs
};

using CheckFn = std::function<CheckResult(const CheckOptions&)>;
const std::map<std::string, CheckFn>& check_registry();
std::vector<std::string> check_names();

}  // namespace ep2d
