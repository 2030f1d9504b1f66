#pragma once

#include "ep2d/field.hpp"

namespace ep2d {

// phi(s): even, 1 on |s| <= 5/4, 0 on |s| >= 8/5. On the transition
//   phi(s) = 1 - S((|s| - 5/4) / (8/5 - 5/4)),
//   S(u) = int_{-1}^{2u-1} psi / int_{-1}^{1} psi,  psi(y) = exp(-1/(1-y^2)),
// with both integrals done by composite 20-point Gauss-Legendre (16 panels).
double cutoff_profile(double s);

// phi_k(r) = phi(r/2^k) - phi(r/2^{k-1}), supported in [5/8 2^k, 8/5 2^k]
double band_symbol(int k, double r);
// sum of phi_k over k_lo <= k <= k_hi
double interval_symbol(int k_lo, int k_hi, double r);
// spatial ring weights: j = 0 takes phi(|x|), j >= 1 is phi_j(|x|)
double spatial_ring(int j, double r);

struct BandRange {
  int lo;
  int hi;
};

// bands whose support meets the nonzero lattice magnitudes
BandRange representable_bands(const Grid& g);
// rings up to ceil(log2(L sqrt2 / 2)), which covers the whole torus
int ring_count(const Grid& g);

struct BandProjection {
  SpectralField field;
  bool representable;
};

BandProjection lp_project(const SpectralField& f, int k);
SpectralField lp_project_interval(const SpectralField& f, int k_lo, int k_hi);

}  // namespace ep2d
