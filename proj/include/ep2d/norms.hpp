#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "ep2d/model.hpp"

namespace ep2d {

// Band weights: Z uses 2^{k z_low} + 2^{k z_high}, Z' uses 2^{k zp_low} + 2^{k zp_high}.
struct NormWeights {
  double z_low = 0.1;
  double z_high = 10.0;
  double zp_low = 0.5;
  double zp_high = 2.0;
  bool operator==(const NormWeights&) const = default;
};

// (sum (1 + |xi|^2)^s |f^|^2 dk^2)^{1/2}
double sobolev_norm(const SpectralField& f, int s);

// sup_k w(k) [ ||P_k f|| + sum_{j>=0} 2^j ||phi_j(x) P_k f|| ]
double z_norm(const SpectralField& f, const NormWeights& w = {});
// sup_k w'(k) ||P_k f||_inf
double z_prime_norm(const SpectralField& f, const NormWeights& w = {});
double y_norm(const SpectralField& f, int n0, const NormWeights& w = {});

// {alpha : |alpha| <= sigma}, graded then lexicographic
std::vector<std::array<int, 2>> multiindices(int sigma);
inline constexpr int kMaxEnergyOrder = 40;
// sum_{|alpha| <= sigma} xi1^{2 alpha1} xi2^{2 alpha2}
double multiindex_weight(int sigma, double xi1, double xi2);
// sum_alpha ||D^alpha U||^2
double weighted_sobolev_square(const SpectralField& u, int sigma);
// quadratic part plus sum_alpha sum_j int q (R_j D^alpha Y)^2, q = |grad| Lambda^{-1} X
double energy_sigma(const ComplexUnknown& U, int sigma);
// only the cubic correction
double energy_sigma_cubic(const ComplexUnknown& U, int sigma);

struct LinfObservables {
  double density = 0.0;  // max |rho|
  double gradv = 0.0;    // max_{i,j} |d_i v_j|
};
LinfObservables linf_observables(const PerturbationState& s);

struct NormReport {
  double time = 0.0;
  std::map<int, double> h_norms;  // of U
  double z_prime = 0.0;           // of U
  std::optional<double> z_norm;   // of the profile V
  std::optional<double> y_norm;   // of the profile V
  int y_order = -1;  // N0 used for y_norm
  double linf_density = 0.0;
  double linf_gradv = 0.0;
  std::map<int, double> e_sigma;
  double e_physical = 0.0;
  Diagnostics diag;
};

struct ReportConfig {
  int n_top = 30;  // N
  int n0 = 20;     // N0
  std::vector<int> h_orders{0, 3};
  std::vector<int> sigma_list{3, 10};
  bool profile_norms = true;
  NormWeights weights;
};

NormReport make_report(const ComplexUnknown& U, double t, const ReportConfig& cfg);

// sup_t (1+t)^{-delta} ||U||_{H^N} + sup_t ||V||_{Y^{N0}}
double x_norm_tracker(const std::vector<NormReport>& history, int N, int N0, double delta);

}  // namespace ep2d
