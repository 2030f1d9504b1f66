#pragma once

#include <random>

#include "ep2d/field.hpp"
#include "ep2d/grid.hpp"

namespace testutil {

using namespace ep2d;

// real random physical field, optionally dealiased
inline SpectralField random_real(const GridPtr& g, std::uint64_t seed, bool band_limit = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(g->size());
  for (auto& z : v) z = nd(rng);
  SpectralField f(g, Representation::physical, std::move(v));
  if (band_limit) f = to_physical(dealias(to_frequency(f)));
  return f;
}

inline SpectralField random_complex(const GridPtr& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(g->size());
  for (auto& z : v) z = {nd(rng), nd(rng)};
  return SpectralField(g, Representation::physical, std::move(v));
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const SpectralField& a) {
  double m = 0.0;
  for (const cplx& z : a.values()) m = std::max(m, std::abs(z));
  return m;
}

// single lattice mode (plus its mirror when real) in frequency space
inline SpectralField mode(const GridPtr& g, int w1, int w2, cplx amp, bool real = false) {
  SpectralField f(g, Representation::frequency);
  f.mutable_values()[g->index_of_wave(w1, w2)] += amp;
  if (real) f.mutable_values()[g->index_of_wave(-w1, -w2)] += std::conj(amp);
  return f;
}

}  // namespace testutil
