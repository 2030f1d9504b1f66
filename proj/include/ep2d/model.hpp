#pragma once

#include <vector>

#include "ep2d/field.hpp"

namespace ep2d {

// rho = n - 1 and the velocity potential h (v = grad h), both real,
// stored in the frequency representation.
struct PerturbationState {
  SpectralField rho;
  SpectralField h;
  double time = 0.0;
};

// U = Lambda |grad|^{-1} rho + i |grad| h in the frequency representation.
struct ComplexUnknown {
  SpectralField u;
  const Grid& grid() const { return u.grid(); }
};

ComplexUnknown to_unknown(const PerturbationState& s);
PerturbationState to_state(const ComplexUnknown& U, double time = 0.0);

// X^ and Y^ for U = X + iY with X, Y real
void split_real_imag(const Grid& g, const cplx* u, cplx* x, cplx* y);

// Evaluates the quadratic right-hand side
//   -sum_j R_j Lambda (A B_j) - (i/2)|grad|(B_1^2 + B_2^2),
//   A = |grad| Lambda^{-1} X,  B_j = R_j Y,
// with pseudo-spectral products, then dealiases and zeroes the mean mode.
// Holds scratch buffers; not shared between threads.
class NonlinearityEvaluator {
 public:
  explicit NonlinearityEvaluator(GridPtr grid);
  void operator()(const cplx* u_hat, cplx* out);

 private:
  GridPtr grid_;
  std::vector<cplx> c1_, c2_, p_, s_;
  std::vector<double> a_sym_, r1_, r2_, out_p_, out_s_;
};

SpectralField nonlinearity_physical(const ComplexUnknown& U);
// Direct lattice sum with the bilinear symbols; N <= 64.
SpectralField nonlinearity_spectral(const ComplexUnknown& U);
inline constexpr int kSpectralOracleMaxN = 64;

double conserved_energy(const PerturbationState& s);
// Parseval for the quadratic part plus a lattice convolution for the cubic
// part; N <= 64.
double conserved_energy_frequency(const PerturbationState& s);

struct Diagnostics {
  double neutrality_residual = 0.0;
  double curl_residual = 0.0;
  double min_density = 1.0;
};

Diagnostics diagnostics(const PerturbationState& s);

}  // namespace ep2d
