#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ep2d/common.hpp"

namespace ep2d {

class FftEngine;
class Grid;
using GridPtr = std::shared_ptr<const Grid>;

// N x N periodic grid on [-L/2, L/2)^2, row-major, row index -> first axis.
// Lattice index i maps to the signed wave number i (i < N/2) or i - N.
// Physical points use the same signed mapping, so the origin is index 0.
class Grid {
 public:
  static GridPtr make(int n, double length, double a, double b);
  ~Grid();

  int n() const { return n_; }
  double length() const { return length_; }
  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  double dx() const { return length_ / n_; }
  double dk() const { return kTwoPi / length_; }
  // quadrature weights of the continuum-unitary convention
  double cell() const { return dx() * dx(); }
  double dual_cell() const { return dk() * dk(); }

  int wave(int i) const { return i < n_ / 2 ? i : i - n_; }
  int slot(int w) const { return w >= 0 ? w : w + n_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  // flat index of a signed lattice point, or -1 if it does not fit
  std::ptrdiff_t index_of_wave(int w1, int w2) const;
  double coord(int i) const { return wave(i) * dx(); }
  Vec2 frequency(std::size_t idx) const { return {k1_[idx], k2_[idx]}; }
  Vec2 position(std::size_t idx) const;
  // largest retained |w| per axis under the 2/3 rule
  int band_limit() const { return n_ / 3; }
  bool in_band(int w1, int w2) const {
    return std::abs(w1) <= band_limit() && std::abs(w2) <= band_limit();
  }

  const std::vector<double>& k1() const { return k1_; }
  const std::vector<double>& k2() const { return k2_; }
  const std::vector<double>& kabs() const { return kabs_; }
  const std::vector<double>& lambda() const { return lambda_; }
  // index of -xi
  const std::vector<std::uint32_t>& mirror() const { return mirror_; }
  // 1 inside the 2/3 band, 0 outside
  const std::vector<double>& band_mask() const { return band_mask_; }
  // Nyquist row or column (odd symbols are zeroed there)
  bool on_nyquist(std::size_t idx) const;

  const FftEngine& fft() const { return *fft_; }

  // Cached per-grid tables for the dyadic machinery.
  const std::vector<double>& lp_symbol(int k) const;
  const std::vector<double>& ring_weight(int j) const;

 private:
  Grid(int n, double length, double a, double b);

  int n_;
  double length_, a_, b_;
  std::vector<double> k1_, k2_, kabs_, lambda_, band_mask_;
  std::vector<std::uint32_t> mirror_;
  std::unique_ptr<FftEngine> fft_;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::vector<double>> lp_cache_, ring_cache_;
};

}  // namespace ep2d
