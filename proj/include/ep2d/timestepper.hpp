#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ep2d/model.hpp"

namespace ep2d {

struct StepperConfig {
  double dt = 0.01;
  double epsilon = 0.0;  // parabolic regularization, adds -epsilon |xi|^2
  double horizon = 1.0;
  int sample_stride = 1;
  bool nonlinear = true;
  // dt * (largest retained |xi|) * max|U| above this is reported
  double stability_budget = 0.5;
  bool operator==(const StepperConfig&) const = default;
};

// Thrown when a step produces non-finite values. Carries the last good state.
struct StepAbort : std::runtime_error {
  StepAbort(const std::string& msg, ComplexUnknown last, double t)
      : std::runtime_error(msg), last_good(std::move(last)), time(t) {}
  ComplexUnknown last_good;
  double time;
};

// Integrating-factor RK4 (Lawson). With E(h) = exp(h L), L = -i Lambda - epsilon |xi|^2:
//   k1 = N(U)
//   k2 = N(E(h/2)(U + h/2 k1))
//   k3 = N(E(h/2)U + h/2 k2)
//   k4 = N(E(h)U + h E(h/2) k3)
//   U+ = E(h)U + h/6 (E(h) k1 + 2 E(h/2)(k2 + k3) + k4)
// Output is dealiased and its mean mode pinned to zero. Negative dt is
// allowed when epsilon = 0 (used for reversibility checks).
class IfRk4Stepper {
 public:
  IfRk4Stepper(GridPtr grid, double dt, double epsilon, bool nonlinear);
  void step(std::vector<cplx>& u);
  double dt() const { return dt_; }

 private:
  GridPtr grid_;
  double dt_;
  bool nonlinear_;
  NonlinearityEvaluator eval_;
  std::vector<cplx> e_half_, e_full_, k1_, k2_, k3_, k4_, tmp_, eu_half_;
};

ComplexUnknown step(const ComplexUnknown& U, const StepperConfig& cfg);

struct Snapshot {
  double time;
  std::size_t step;
  const ComplexUnknown& U;
};
using Observer = std::function<void(const Snapshot&)>;

struct RunSummary {
  ComplexUnknown final_state;
  double final_time = 0.0;
  std::size_t steps = 0;
  bool aborted = false;
  std::string abort_message;
  bool beyond_horizon = false;  // horizon > L / (4 sqrt a)
  std::string stability_warning;
};

inline double wraparound_horizon(const Grid& g) { return g.length() / (4.0 * std::sqrt(g.a())); }

// Observers fire at step 0, every sample_stride steps and at the end.
RunSummary run(const ComplexUnknown& U0, const StepperConfig& cfg,
               const std::vector<Observer>& observers = {});

struct EpsilonPair {
  double eps_a = 0.0, eps_b = 0.0;
  double max_distance = 0.0;    // sup over matched sample times of ||U^a - U^b||_{H^s}
  double final_distance = 0.0;
};

struct ConvergenceTable {
  int sobolev_order = 3;
  std::vector<EpsilonPair> pairs;
  // slope of log(max_distance) against log(eps_a + eps_b); NaN with < 2 usable pairs
  double fitted_order = 0.0;
};

ConvergenceTable epsilon_convergence_study(const ComplexUnknown& U0,
                                           const std::vector<double>& eps_list,
                                           const StepperConfig& cfg, int sobolev_order = 3);

}  // namespace ep2d
