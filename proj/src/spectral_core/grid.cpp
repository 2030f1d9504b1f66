#include "ep2d/grid.hpp"

#include <cmath>
#include <string>

#include "ep2d/dyadic.hpp"
#include "ep2d/fft.hpp"

namespace ep2d {

GridPtr Grid::make(int n, double length, double a, double b) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw InputError("grid.n must be a power of two >= 8, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length)) throw InputError("grid.L must be positive");
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw InputError("model.a and model.b must be positive");
  return GridPtr(new Grid(n, length, a, b));
}

Grid::Grid(int n, double length, double a, double b) : n_(n), length_(length), a_(a), b_(b) {
  const std::size_t total = size();
  k1_.resize(total);
  k2_.resize(total);
  kabs_.resize(total);
  lambda_.resize(total);
  band_mask_.resize(total);
  mirror_.resize(total);
  const double d = dk();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = index(i, j);
      const int w1 = wave(i), w2 = wave(j);
      k1_[idx] = w1 * d;
      k2_[idx] = w2 * d;
      kabs_[idx] = std::hypot(k1_[idx], k2_[idx]);
      lambda_[idx] = std::sqrt(a * kabs_[idx] * kabs_[idx] + b);
      band_mask_[idx] = in_band(w1, w2) ? 1.0 : 0.0;
      mirror_[idx] = static_cast<std::uint32_t>(index((n - i) % n, (n - j) % n));
    }
  }
  fft_ = std::make_unique<FftEngine>(n);
}

Grid::~Grid() = default;

std::ptrdiff_t Grid::index_of_wave(int w1, int w2) const {
  const int h = n_ / 2;
  if (w1 < -h || w1 >= h || w2 < -h || w2 >= h) return -1;
  return static_cast<std::ptrdiff_t>(index(slot(w1), slot(w2)));
}

Vec2 Grid::position(std::size_t idx) const {
  const int i = static_cast<int>(idx / n_), j = static_cast<int>(idx % n_);
  return {coord(i), coord(j)};
}

bool Grid::on_nyquist(std::size_t idx) const {
  const int i = static_cast<int>(idx / n_), j = static_cast<int>(idx % n_);
  return i == n_ / 2 || j == n_ / 2;
}

const std::vector<double>& Grid::lp_symbol(int k) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = lp_cache_.find(k);
  if (it != lp_cache_.end()) return it->second;
  std::vector<double> w(size());
  for (std::size_t idx = 0; idx < w.size(); ++idx) w[idx] = band_symbol(k, kabs_[idx]);
  return lp_cache_.emplace(k, std::move(w)).first->second;
}

const std::vector<double>& Grid::ring_weight(int j) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = ring_cache_.find(j);
  if (it != ring_cache_.end()) return it->second;
  std::vector<double> w(size());
  for (std::size_t idx = 0; idx < w.size(); ++idx) w[idx] = spatial_ring(j, norm(position(idx)));
  return ring_cache_.emplace(j, std::move(w)).first->second;
}

}  // namespace ep2d
