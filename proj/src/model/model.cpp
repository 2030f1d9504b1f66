#include "ep2d/model.hpp"

#include <algorithm>
#include <cmath>

#include "ep2d/simd.hpp"
#include "ep2d/symbols.hpp"

namespace ep2d {
namespace {

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

void check_real(const SpectralField& f, const char* what) {
  if (hermitian_defect(f) > 1e-10) throw InputError(std::string(what) + " is not real-valued");
}

}  // namespace

void split_real_imag(const Grid& g, const cplx* u, cplx* x, cplx* y) {
  const auto& mir = g.mirror();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx c = std::conj(u[mir[i]]);
    x[i] = 0.5 * (u[i] + c);
    y[i] = cplx(0.0, -0.5) * (u[i] - c);
  }
}

ComplexUnknown to_unknown(const PerturbationState& s) {
  const SpectralField rho = to_frequency(s.rho);
  const SpectralField h = to_frequency(s.h);
  const Grid& g = rho.grid();
  if (std::abs(rho[0]) > 1e-10 * std::max(max_abs(rho.values()), 1e-300))
    throw InputError("state is not neutral: mean density perturbation is nonzero");
  check_real(rho, "rho");
  check_real(h, "h");
  SpectralField u(rho.grid_ptr(), Representation::frequency);
  auto& v = u.mutable_values();
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double k = g.kabs()[i];
    v[i] = (g.lambda()[i] / k) * rho[i] + cplx(0.0, k) * h[i];
  }
  v[0] = 0.0;
  return {u};
}

PerturbationState to_state(const ComplexUnknown& U, double time) {
  const SpectralField u = to_frequency(U.u);
  const Grid& g = u.grid();
  std::vector<cplx> x(g.size()), y(g.size());
  split_real_imag(g, u.values().data(), x.data(), y.data());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double k = g.kabs()[i];
    if (k == 0.0) {
      x[i] = y[i] = 0.0;
      continue;
    }
    x[i] *= k / g.lambda()[i];
    y[i] /= k;
  }
  return {SpectralField(u.grid_ptr(), Representation::frequency, std::move(x)),
          SpectralField(u.grid_ptr(), Representation::frequency, std::move(y)), time};
}

// ---------------------------------------------------------------------------

NonlinearityEvaluator::NonlinearityEvaluator(GridPtr grid) : grid_(std::move(grid)) {
  const Grid& g = *grid_;
  const std::size_t n = g.size();
  c1_.resize(n);
  c2_.resize(n);
  p_.resize(n);
  s_.resize(n);
  a_sym_.assign(n, 0.0);
  r1_.assign(n, 0.0);
  r2_.assign(n, 0.0);
  out_p_.assign(n, 0.0);
  out_s_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = g.kabs()[i];
    if (k == 0.0) continue;
    a_sym_[i] = k / g.lambda()[i];
    if (!g.on_nyquist(i)) {
      r1_[i] = g.k1()[i] / k;
      r2_[i] = g.k2()[i] / k;
    }
    out_p_[i] = g.lambda()[i] * g.band_mask()[i];
    out_s_[i] = 0.5 * k * g.band_mask()[i];
  }
}

void NonlinearityEvaluator::operator()(const cplx* u, cplx* out) {
  const Grid& g = *grid_;
  const std::size_t n = g.size();
  const auto& mir = g.mirror();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx c = std::conj(u[mir[i]]);
    const cplx x = 0.5 * (u[i] + c);
    const cplx y = cplx(0.0, -0.5) * (u[i] - c);
    // A^ + i B1^ with B1^ = i r1 Y^
    c1_[i] = a_sym_[i] * x - r1_[i] * y;
    c2_[i] = cplx(0.0, r2_[i]) * y;
  }
  backward_inplace(g, c1_.data());
  backward_inplace(g, c2_.data());
  simd::kernels().quadratic_products(c1_.data(), c2_.data(), p_.data(), s_.data(), n);
  forward_inplace(g, p_.data());
  forward_inplace(g, s_.data());
  for (std::size_t i = 0; i < n; ++i) {
    const cplx c = std::conj(p_[mir[i]]);
    const cplx p1 = 0.5 * (p_[i] + c);
    const cplx p2 = cplx(0.0, -0.5) * (p_[i] - c);
    const cplx s = 0.5 * (s_[i] + std::conj(s_[mir[i]]));
    out[i] = cplx(0.0, -1.0) * (out_p_[i] * (r1_[i] * p1 + r2_[i] * p2) + out_s_[i] * s);
  }
  out[0] = 0.0;
}

SpectralField nonlinearity_physical(const ComplexUnknown& U) {
  const SpectralField u = to_frequency(U.u);
  NonlinearityEvaluator eval(u.grid_ptr());
  SpectralField out(u.grid_ptr(), Representation::frequency);
  eval(u.values().data(), out.mutable_values().data());
  return out;
}

SpectralField nonlinearity_spectral(const ComplexUnknown& U) {
  const SpectralField u = to_frequency(U.u);
  const Grid& g = u.grid();
  if (g.n() > kSpectralOracleMaxN)
    throw InputError("spectral nonlinearity oracle is limited to N <= 64");
  const Dispersion d = dispersion_of(g);
  const int K = g.band_limit();
  const double dk = g.dk();
  // U_+(w) and U_-(w) = conj U(-w) on the band
  auto at = [&](int w1, int w2, int sign) -> cplx {
    if (std::abs(w1) > K || std::abs(w2) > K) return 0.0;
    if (sign > 0) return u[g.index_of_wave(w1, w2)];
    return std::conj(u[g.index_of_wave(-w1, -w2)]);
  };
  SpectralField out(u.grid_ptr(), Representation::frequency);
  auto& v = out.mutable_values();
  const double weight = g.dual_cell();
  for (int x1 = -K; x1 <= K; ++x1) {
    for (int x2 = -K; x2 <= K; ++x2) {
      if (x1 == 0 && x2 == 0) continue;
      const Vec2 xi{x1 * dk, x2 * dk};
      cplx acc = 0.0;
      for (int e1 = std::max(-K, x1 - K); e1 <= std::min(K, x1 + K); ++e1) {
        for (int e2 = std::max(-K, x2 - K); e2 <= std::min(K, x2 + K); ++e2) {
          const Vec2 eta{e1 * dk, e2 * dk};
          for (PairSig sig : kPairs) {
            const cplx f = at(x1 - e1, x2 - e2, first(sig)) * at(e1, e2, second(sig));
            if (f == 0.0) continue;
            acc += bilinear_symbol_eval(sig, xi, eta, d) * f;
          }
        }
      }
      v[g.index_of_wave(x1, x2)] = acc * weight;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PhysicalViews {
  std::vector<cplx> rho, v1, v2, e1, e2;
};

PhysicalViews physical_views(const PerturbationState& s) {
  const SpectralField rho = to_frequency(s.rho);
  const SpectralField h = to_frequency(s.h);
  const Grid& g = rho.grid();
  const std::size_t n = g.size();
  PhysicalViews pv;
  pv.rho = rho.values();
  pv.v1.resize(n);
  pv.v2.resize(n);
  pv.e1.resize(n);
  pv.e2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k2 = g.kabs()[i] * g.kabs()[i];
    const bool nyq = g.on_nyquist(i);
    pv.v1[i] = nyq ? 0.0 : cplx(0.0, g.k1()[i]) * h[i];
    pv.v2[i] = nyq ? 0.0 : cplx(0.0, g.k2()[i]) * h[i];
    // grad Delta^{-1} rho
    pv.e1[i] = (nyq || k2 == 0.0) ? 0.0 : cplx(0.0, -g.k1()[i] / k2) * rho[i];
    pv.e2[i] = (nyq || k2 == 0.0) ? 0.0 : cplx(0.0, -g.k2()[i] / k2) * rho[i];
  }
  for (auto* f : {&pv.rho, &pv.v1, &pv.v2, &pv.e1, &pv.e2}) backward_inplace(g, f->data());
  return pv;
}

}  // namespace

double conserved_energy(const PerturbationState& s) {
  const Grid& g = s.rho.grid();
  const PhysicalViews pv = physical_views(s);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = pv.rho[i].real();
    const double v2 = std::norm(pv.v1[i].real()) + std::norm(pv.v2[i].real());
    const double e2 = std::norm(pv.e1[i].real()) + std::norm(pv.e2[i].real());
    acc += (1.0 + r) * v2 + g.a() * r * r + g.b() * e2;
  }
  return 0.5 * acc * g.cell();
}

double conserved_energy_frequency(const PerturbationState& s) {
  const SpectralField rho = to_frequency(s.rho);
  const SpectralField h = to_frequency(s.h);
  const Grid& g = rho.grid();
  if (g.n() > kSpectralOracleMaxN) throw InputError("frequency energy is limited to N <= 64");
  double quad = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (g.on_nyquist(i)) continue;
    const double k2 = g.kabs()[i] * g.kabs()[i];
    quad += k2 * std::norm(h[i]) + (g.a() + g.b() / k2) * std::norm(rho[i]);
  }
  quad *= g.dual_cell();
  // int rho |v|^2 = sum_xi conj(rho^(xi)) (v.v)^(xi) dk^2,
  // (v.v)^(xi) = (2 pi)^{-1} sum_eta v^(xi - eta) . v^(eta) dk^2  over the full lattice
  const int h2 = g.n() / 2;
  auto vhat = [&](int w1, int w2, int j) -> cplx {
    if (w1 < -h2 + 1 || w1 > h2 - 1 || w2 < -h2 + 1 || w2 > h2 - 1) return 0.0;
    const std::size_t i = static_cast<std::size_t>(g.index_of_wave(w1, w2));
    return cplx(0.0, (j == 1 ? w1 : w2) * g.dk()) * h[i];
  };
  cplx cubic = 0.0;
  for (int x1 = -h2 + 1; x1 < h2; ++x1) {
    for (int x2 = -h2 + 1; x2 < h2; ++x2) {
      const cplx r = rho[static_cast<std::size_t>(g.index_of_wave(x1, x2))];
      if (r == 0.0) continue;
      cplx conv = 0.0;
      for (int e1 = std::max(-h2 + 1, x1 - h2 + 1); e1 <= std::min(h2 - 1, x1 + h2 - 1); ++e1)
        for (int e2 = std::max(-h2 + 1, x2 - h2 + 1); e2 <= std::min(h2 - 1, x2 + h2 - 1); ++e2)
          conv += vhat(x1 - e1, x2 - e2, 1) * vhat(e1, e2, 1) +
                  vhat(x1 - e1, x2 - e2, 2) * vhat(e1, e2, 2);
      cubic += std::conj(r) * conv;
    }
  }
  const double cub = cubic.real() * g.dual_cell() * g.dual_cell() / kTwoPi;
  return 0.5 * (quad + cub);
}

Diagnostics diagnostics(const PerturbationState& s) {
  const SpectralField rho = to_frequency(s.rho);
  const SpectralField h = to_frequency(s.h);
  const Grid& g = rho.grid();
  Diagnostics d;
  d.neutrality_residual = std::abs(rho[0]);
  std::vector<cplx> c(g.size()), r = rho.values();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.on_nyquist(i)) continue;
    const cplx v1 = cplx(0.0, g.k1()[i]) * h[i];
    const cplx v2 = cplx(0.0, g.k2()[i]) * h[i];
    c[i] = cplx(0.0, g.k1()[i]) * v2 - cplx(0.0, g.k2()[i]) * v1;
  }
  backward_inplace(g, c.data());
  backward_inplace(g, r.data());
  d.curl_residual = std::sqrt(simd::kernels().weighted_norm_sq(c.data(), nullptr, c.size()) * g.cell());
  double mn = INFINITY;
  for (const cplx& z : r) mn = std::min(mn, z.real());
  d.min_density = 1.0 + mn;
  return d;
}

}  // namespace ep2d
