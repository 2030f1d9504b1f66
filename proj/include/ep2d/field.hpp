#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ep2d/grid.hpp"

namespace ep2d {

enum class Representation : std::uint8_t { physical = 0, frequency = 1 };

// Values on the grid in one representation. Treated as immutable by the
// library: every operation returns a new field.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(GridPtr grid, Representation rep);
  SpectralField(GridPtr grid, Representation rep, std::vector<cplx> values);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_frequency() const { return rep_ == Representation::frequency; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& mutable_values() { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  GridPtr grid_;
  Representation rep_ = Representation::physical;
  std::vector<cplx> values_;
};

// Continuum-unitary transforms:
//   f^(xi) = dx^2/(2 pi) sum_x f(x) e^{-i x.xi},  f(x) = dk^2/(2 pi) sum_xi f^(xi) e^{i x.xi}
// so sum |f|^2 dx^2 = sum |f^|^2 dk^2.
SpectralField to_frequency(const SpectralField& f);
SpectralField to_physical(const SpectralField& f);

// In-place transforms on raw buffers of grid.size() values.
void forward_inplace(const Grid& g, cplx* data);
void backward_inplace(const Grid& g, cplx* data);

struct Multiplier {
  std::function<cplx(double, double)> symbol;
  std::optional<cplx> at_origin;  // required when symbol(0,0) is not finite
  bool odd = false;               // zeroed on the Nyquist lines
  std::string name;
};

// Output keeps the input's representation.
SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m);

namespace multipliers {
Multiplier identity();
Multiplier lambda(double a, double b);
Multiplier abs_grad();
Multiplier inv_abs_grad();
Multiplier riesz(int j);    // i xi_j / |xi|
Multiplier partial(int j);  // i xi_j
}  // namespace multipliers

// Zero every mode with max(|w1|,|w2|) > N/3. Frequency input only.
SpectralField dealias(const SpectralField& f);

// sqrt(sum |f|^2 cell) in either representation
double l2_norm(const SpectralField& f);
// max |f^(-xi) - conj f^(xi)| / max |f^|; frequency input
double hermitian_defect(const SpectralField& f);
SpectralField add(const SpectralField& f, const SpectralField& g, cplx alpha = 1.0);
SpectralField scaled(const SpectralField& f, cplx alpha);
SpectralField real_part(const SpectralField& f);  // physical input or output matches input

}  // namespace ep2d
