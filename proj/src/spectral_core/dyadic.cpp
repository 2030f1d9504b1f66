#include "ep2d/dyadic.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "ep2d/simd.hpp"

namespace ep2d {
namespace {

constexpr double kPlateau = 1.25;
constexpr double kEdge = 1.6;
constexpr int kPanels = 16;

double bump(double y) {
  const double q = 1.0 - y * y;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

double bump_integral(double lo, double hi) {
  const double h = (hi - lo) / kPanels;
  double s = 0.0;
  for (int p = 0; p < kPanels; ++p)
    s += boost::math::quadrature::gauss<double, 20>::integrate(bump, lo + p * h, lo + (p + 1) * h);
  return s;
}

double bump_total() {
  static const double total = bump_integral(-1.0, 1.0);
  return total;
}

// S(u) on [0, 1], mirrored about u = 1/2 so both halves share one rule
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double y = 2.0 * u - 1.0;
  if (y <= 0.0) return bump_integral(-1.0, y) / bump_total();
  return 1.0 - bump_integral(-1.0, -y) / bump_total();
}

}  // namespace

double cutoff_profile(double s) {
  const double r = std::abs(s);
  if (r <= kPlateau) return 1.0;
  if (r >= kEdge) return 0.0;
  return 1.0 - smooth_step((r - kPlateau) / (kEdge - kPlateau));
}

double band_symbol(int k, double r) {
  return cutoff_profile(std::ldexp(r, -k)) - cutoff_profile(std::ldexp(r, 1 - k));
}

double interval_symbol(int k_lo, int k_hi, double r) {
  if (k_hi < k_lo) return 0.0;
  return cutoff_profile(std::ldexp(r, -k_hi)) - cutoff_profile(std::ldexp(r, 1 - k_lo));
}

double spatial_ring(int j, double r) {
  if (j < 0) return 0.0;
  if (j == 0) return cutoff_profile(r);
  return band_symbol(j, r);
}

BandRange representable_bands(const Grid& g) {
  const double kmin = g.dk();
  const double kmax = g.dk() * (g.n() / 2) * std::sqrt(2.0);
  return {static_cast<int>(std::ceil(std::log2(kmin / kEdge))),
          static_cast<int>(std::floor(std::log2(kmax * kEdge)))};
}

int ring_count(const Grid& g) {
  return static_cast<int>(std::ceil(std::log2(g.length() * std::sqrt(2.0) / 2.0)));
}

BandProjection lp_project(const SpectralField& f, int k) {
  const BandRange br = representable_bands(f.grid());
  if (k < br.lo || k > br.hi) return {SpectralField(f.grid_ptr(), f.representation()), false};
  SpectralField fh = to_frequency(f);
  const std::vector<double>& w = f.grid().lp_symbol(k);
  simd::kernels().mul_real(fh.mutable_values().data(), w.data(), fh.size());
  return {f.is_frequency() ? fh : to_physical(fh), true};
}

SpectralField lp_project_interval(const SpectralField& f, int k_lo, int k_hi) {
  SpectralField fh = to_frequency(f);
  const Grid& g = f.grid();
  auto& v = fh.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= interval_symbol(k_lo, k_hi, g.kabs()[i]);
  return f.is_frequency() ? fh : to_physical(fh);
}

}  // namespace ep2d
