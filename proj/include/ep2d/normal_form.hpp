#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "ep2d/model.hpp"
#include "ep2d/symbols.hpp"

namespace ep2d {

// V^ = e^{it Lambda} U^
SpectralField profile_of(const ComplexUnknown& U, double t);
ComplexUnknown unknown_of_profile(const SpectralField& V, double t);

// Raised for a requested frequency that is not a lattice point of the
// retained band. what() names the nearest admissible lattice frequency.
struct OffLatticeError : InputError {
  OffLatticeError(const std::string& msg, Vec2 nearest) : InputError(msg), nearest(nearest) {}
  Vec2 nearest;
};

// Map physical frequencies to grid indices (tolerance 1e-9 lattice units).
std::vector<std::size_t> resolve_frequencies(const Grid& g, const std::vector<Vec2>& xi);

// `count` in-band lattice frequencies spread over low, middle and high bands,
// deterministic for a given grid.
std::vector<Vec2> default_output_frequencies(const Grid& g, int count = 64);

// W^(xi) = e^{it Lambda}[U^ + i sum_{mu nu} sum_eta (m/Phi) U^_mu(xi - eta) U^_nu(eta) dk^2]
std::vector<cplx> w_profile(const ComplexUnknown& U, double t, const std::vector<Vec2>& xi);
// All lattice points; N <= kFullWMaxN.
SpectralField w_profile_full(const ComplexUnknown& U, double t);
inline constexpr int kFullWMaxN = 48;

// dW/dt from the quadratic part with dU/dt replaced by the dealiased
// nonlinearity; needs no cubic symbols.
std::vector<cplx> w_derivative_direct(const ComplexUnknown& U, double t,
                                      const std::vector<Vec2>& xi);

// i e^{it Lambda(xi)} sum_{sig} sum_{eta, chi} m_sig(xi, eta, chi) sinc(window Phi_sig)
//   U^_mu(xi - eta) U^_nu(eta - chi) U^_sigma(chi) dk^4
// Each addend is masked at its intermediate frequency. window = 0 gives the
// instantaneous cubic; window = h gives its average over [t - h, t + h] under
// the linear flow. Result per frequency and per sign channel.
std::vector<std::array<cplx, 4>> cubic_rhs_channels(const ComplexUnknown& U, double t,
                                                    const std::vector<Vec2>& xi,
                                                    double window = 0.0);
std::vector<cplx> cubic_rhs(const ComplexUnknown& U, double t, const std::vector<Vec2>& xi,
                            double window = 0.0);

}  // namespace ep2d
