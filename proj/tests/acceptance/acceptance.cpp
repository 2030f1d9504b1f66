// One line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ep2d/verify.hpp"

using namespace ep2d;

int main(int argc, char** argv) {
  CheckOptions opt;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--quick") opt.quick = true;

  struct Row {
    int id;
    const char* check;
    const char* what;
  };
  const std::vector<Row> rows{
      {1, "nonlinearity_oracle", "physical vs spectral nonlinearity"},
      {2, "linear_exactness", "linear solver vs exact propagator"},
      {3, "conservation", "energy drift, neutrality, curl"},
      {4, "dispersive_decay", "band-limited linear decay rate"},
      {5, "nonlinear_decay", "density and velocity-gradient decay"},
      {6, "energy_equivalence", "modified energy vs weighted Sobolev square"},
      {7, "energy_growth", "effective energy growth exponent"},
      {8, "phase_bounds", "sampled phase inequalities"},
      {9, "normal_form", "corrected profile vs cubic term"},
      {10, "stepper_order", "fourth order under dt halving"},
      {11, "epsilon_study", "convergence in the viscosity"},
      {0, "z_decay", "Z to Z' linear decay (supplementary)"},
      {0, "multiplier_y", "multipliers bounded on Y (supplementary)"},
  };
  int failures = 0;
  for (const Row& r : rows) {
    const auto t0 = std::chrono::steady_clock::now();
    const CheckResult res = check_registry().at(r.check)(opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!res.pass) ++failures;
    const std::string label = r.id ? "criterion " + std::to_string(r.id) : std::string("extra");
    std::printf("%-4s %-12s %-20s %-44s %7.1fs  %s\n", res.pass ? "PASS" : "FAIL", label.c_str(), r.check, r.what,
                secs, res.measured.dump().c_str());
    std::fflush(stdout);
  }
  std::printf("%d failure(s)\n", failures);
  return failures;
}
