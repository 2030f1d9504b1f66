#include "ep2d/field.hpp"

#include <algorithm>
#include <cmath>

#include "ep2d/fft.hpp"
#include "ep2d/simd.hpp"

namespace ep2d {

SpectralField::SpectralField(GridPtr grid, Representation rep)
    : grid_(std::move(grid)), rep_(rep), values_(grid_->size(), cplx(0.0, 0.0)) {}

SpectralField::SpectralField(GridPtr grid, Representation rep, std::vector<cplx> values)
    : grid_(std::move(grid)), rep_(rep), values_(std::move(values)) {
  if (values_.size() != grid_->size()) throw InputError("field size does not match grid");
}

void forward_inplace(const Grid& g, cplx* data) {
  g.fft().forward(data, data);
  simd::kernels().scale(data, g.cell() / kTwoPi, g.size());
}

void backward_inplace(const Grid& g, cplx* data) {
  g.fft().backward(data, data);
  simd::kernels().scale(data, g.dual_cell() / kTwoPi, g.size());
}

SpectralField to_frequency(const SpectralField& f) {
  if (f.is_frequency()) return f;
  std::vector<cplx> out(f.size());
  f.grid().fft().forward(f.values().data(), out.data());
  simd::kernels().scale(out.data(), f.grid().cell() / kTwoPi, out.size());
  return SpectralField(f.grid_ptr(), Representation::frequency, std::move(out));
}

SpectralField to_physical(const SpectralField& f) {
  if (!f.is_frequency()) return f;
  std::vector<cplx> out(f.size());
  f.grid().fft().backward(f.values().data(), out.data());
  simd::kernels().scale(out.data(), f.grid().dual_cell() / kTwoPi, out.size());
  return SpectralField(f.grid_ptr(), Representation::physical, std::move(out));
}

SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m) {
  const Grid& g = f.grid();
  SpectralField fh = to_frequency(f);
  std::vector<cplx>& v = fh.mutable_values();
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    cplx s;
    if (idx == 0 && m.at_origin) {
      s = *m.at_origin;
    } else if (m.odd && g.on_nyquist(idx)) {
      s = 0.0;
    } else {
      s = m.symbol(g.k1()[idx], g.k2()[idx]);
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw InputError("multiplier " + m.name + " is not finite at a lattice point");
    }
    v[idx] *= s;
  }
  return f.is_frequency() ? fh : to_physical(fh);
}

namespace multipliers {

Multiplier identity() { return {[](double, double) { return cplx(1.0); }, std::nullopt, false, "identity"}; }

Multiplier lambda(double a, double b) {
  return {[a, b](double x, double y) { return cplx(std::sqrt(a * (x * x + y * y) + b)); },
          std::nullopt, false, "lambda"};
}

Multiplier abs_grad() {
  return {[](double x, double y) { return cplx(std::hypot(x, y)); }, cplx(0.0), false, "abs_grad"};
}

Multiplier inv_abs_grad() {
  return {[](double x, double y) { return cplx(1.0 / std::hypot(x, y)); }, cplx(0.0), false,
          "inv_abs_grad"};
}

Multiplier riesz(int j) {
  if (j != 1 && j != 2) throw InputError("riesz index must be 1 or 2");
  return {[j](double x, double y) { return cplx(0.0, (j == 1 ? x : y) / std::hypot(x, y)); },
          cplx(0.0), true, j == 1 ? "riesz1" : "riesz2"};
}

Multiplier partial(int j) {
  if (j != 1 && j != 2) throw InputError("partial index must be 1 or 2");
  return {[j](double x, double y) { return cplx(0.0, j == 1 ? x : y); }, std::nullopt, true,
          j == 1 ? "d1" : "d2"};
}

}  // namespace multipliers

SpectralField dealias(const SpectralField& f) {
  if (!f.is_frequency()) throw InputError("dealias expects a frequency field");
  SpectralField out = f;
  std::vector<cplx>& v = out.mutable_values();
  const std::vector<double>& mask = f.grid().band_mask();
  simd::kernels().mul_real(v.data(), mask.data(), v.size());
  return out;
}

double l2_norm(const SpectralField& f) {
  const Grid& g = f.grid();
  const double w = f.is_frequency() ? g.dual_cell() : g.cell();
  return std::sqrt(simd::kernels().weighted_norm_sq(f.values().data(), nullptr, f.size()) * w);
}

double hermitian_defect(const SpectralField& f) {
  const auto& v = f.values();
  const auto& mir = f.grid().mirror();
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    worst = std::max(worst, std::abs(v[mir[i]] - std::conj(v[i])));
    scale = std::max(scale, std::abs(v[i]));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

SpectralField add(const SpectralField& f, const SpectralField& g, cplx alpha) {
  if (f.representation() != g.representation()) throw InputError("representation mismatch");
  SpectralField out = f;
  simd::kernels().axpy(out.mutable_values().data(), alpha, g.values().data(), f.size());
  return out;
}

SpectralField scaled(const SpectralField& f, cplx alpha) {
  SpectralField out(f.grid_ptr(), f.representation());
  simd::kernels().axpy(out.mutable_values().data(), alpha, f.values().data(), f.size());
  return out;
}

SpectralField real_part(const SpectralField& f) {
  SpectralField p = to_physical(f);
  for (cplx& z : p.mutable_values()) z = cplx(z.real(), 0.0);
  return f.is_frequency() ? to_frequency(p) : p;
}

}  // namespace ep2d
