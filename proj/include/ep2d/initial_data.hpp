#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ep2d/model.hpp"

namespace ep2d {

// Recipes:
//   gaussian_rho  rho = A (1 - r^2/2w^2) exp(-r^2/2w^2), h = 0 (zero mean)
//   gaussian_h    rho = 0, h = A exp(-r^2/2w^2)
//   mode_pair     rho = A cos(k.x) with k = k_vector * 2pi/L, h = 0
//   file          complex unknown read from a field dump
//   random        rho, h with independent normal Fourier coefficients
//                 damped by exp(-|xi|^2 w^2 / 2); L2 norm of U scaled to A
struct InitRecipe {
  std::string kind = "gaussian_h";
  double amplitude = 0.0;
  double width = 1.0;
  std::array<int, 2> k_vector{1, 0};
  std::string path;
  std::uint64_t seed = 1;

  bool operator==(const InitRecipe&) const = default;
};

inline InitRecipe gaussian_h_recipe(double amplitude, double width) {
  InitRecipe r;
  r.amplitude = amplitude;
  r.width = width;
  return r;
}

// Always neutral, real and dealiased.
PerturbationState make_initial_state(const GridPtr& grid, const InitRecipe& recipe);
ComplexUnknown make_initial_unknown(const GridPtr& grid, const InitRecipe& recipe);

// Random dealiased real state scaled so that ||U||_{L2} = amplitude.
ComplexUnknown random_unknown(const GridPtr& grid, std::uint64_t seed, double amplitude,
                              double width = 1.0);

}  // namespace ep2d
