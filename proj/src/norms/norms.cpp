#include "ep2d/norms.hpp"

#include <algorithm>
#include <cmath>

#include "ep2d/dispersion.hpp"
#include "ep2d/dyadic.hpp"
#include "ep2d/simd.hpp"

namespace ep2d {

double sobolev_norm(const SpectralField& f, int s) {
  if (s < 0) throw InputError("sobolev order must be nonnegative");
  const SpectralField fh = to_frequency(f);
  const Grid& g = fh.grid();
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(1.0 + g.kabs()[i] * g.kabs()[i], s);
  return std::sqrt(simd::kernels().weighted_norm_sq(fh.values().data(), w.data(), w.size()) *
                   g.dual_cell());
}

namespace {

double band_weight(int k, double lo, double hi) { return std::exp2(lo * k) + std::exp2(hi * k); }

// P_k f in physical space, or empty when the band carries no mass
bool band_physical(const SpectralField& fh, int k, std::vector<cplx>& out) {
  const Grid& g = fh.grid();
  const std::vector<double>& sym = g.lp_symbol(k);
  out = fh.values();
  simd::kernels().mul_real(out.data(), sym.data(), out.size());
  if (simd::kernels().weighted_norm_sq(out.data(), nullptr, out.size()) == 0.0) return false;
  backward_inplace(g, out.data());
  return true;
}

}  // namespace

double z_norm(const SpectralField& f, const NormWeights& w) {
  const SpectralField fh = to_frequency(f);
  const Grid& g = fh.grid();
  const BandRange br = representable_bands(g);
  const int jmax = ring_count(g);
  std::vector<cplx> pk;
  std::vector<double> modsq(g.size());
  double best = 0.0;
  for (int k = br.lo; k <= br.hi; ++k) {
    if (!band_physical(fh, k, pk)) continue;
    for (std::size_t i = 0; i < pk.size(); ++i) modsq[i] = std::norm(pk[i]);
    double total = 0.0;
    for (double m : modsq) total += m;
    double bracket = std::sqrt(total * g.cell());
    for (int j = 0; j <= jmax; ++j) {
      const std::vector<double>& ring = g.ring_weight(j);
      double acc = 0.0;
      for (std::size_t i = 0; i < modsq.size(); ++i) acc += ring[i] * ring[i] * modsq[i];
      bracket += std::exp2(j) * std::sqrt(acc * g.cell());
    }
    best = std::max(best, band_weight(k, w.z_low, w.z_high) * bracket);
  }
  return best;
}

double z_prime_norm(const SpectralField& f, const NormWeights& w) {
  const SpectralField fh = to_frequency(f);
  const Grid& g = fh.grid();
  const BandRange br = representable_bands(g);
  std::vector<cplx> pk;
  double best = 0.0;
  for (int k = br.lo; k <= br.hi; ++k) {
    if (!band_physical(fh, k, pk)) continue;
    double m = 0.0;
    for (const cplx& z : pk) m = std::max(m, std::abs(z));
    best = std::max(best, band_weight(k, w.zp_low, w.zp_high) * m);
  }
  return best;
}

double y_norm(const SpectralField& f, int n0, const NormWeights& w) {
  return sobolev_norm(f, n0) + z_norm(f, w);
}

std::vector<std::array<int, 2>> multiindices(int sigma) {
  if (sigma < 0 || sigma > kMaxEnergyOrder) throw InputError("energy order must lie in [0, 40]");
  std::vector<std::array<int, 2>> out;
  out.reserve(static_cast<std::size_t>((sigma + 1) * (sigma + 2) / 2));
  for (int total = 0; total <= sigma; ++total)
    for (int a1 = total; a1 >= 0; --a1) out.push_back({a1, total - a1});
  return out;
}

double multiindex_weight(int sigma, double xi1, double xi2) {
  // sum_{p+q <= sigma} x^p y^q with x = xi1^2, y = xi2^2
  const double x = xi1 * xi1, y = xi2 * xi2;
  double total = 0.0, xp = 1.0;
  for (int p = 0; p <= sigma; ++p) {
    double yq = 1.0, row = 0.0;
    for (int q = 0; q + p <= sigma; ++q) {
      row += yq;
      yq *= y;
    }
    total += xp * row;
    xp *= x;
  }
  return total;
}

double weighted_sobolev_square(const SpectralField& u, int sigma) {
  const SpectralField uh = to_frequency(u);
  const Grid& g = uh.grid();
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = multiindex_weight(sigma, g.k1()[i], g.k2()[i]);
  return simd::kernels().weighted_norm_sq(uh.values().data(), w.data(), w.size()) * g.dual_cell();
}

double energy_sigma_cubic(const ComplexUnknown& U, int sigma) {
  const SpectralField uh = to_frequency(U.u);
  const Grid& g = uh.grid();
  const std::size_t n = g.size();
  const auto alphas = multiindices(sigma);
  std::vector<cplx> x(n), y(n);
  split_real_imag(g, uh.values().data(), x.data(), y.data());
  // q = |grad| Lambda^{-1} X in physical space
  for (std::size_t i = 0; i < n; ++i) x[i] *= g.kabs()[i] / g.lambda()[i];
  backward_inplace(g, x.data());
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = x[i].real();

  // powers of the axis wave numbers, pw[p][i] = (i-th axis frequency)^p
  const int N = g.n();
  std::vector<std::vector<double>> pw(static_cast<std::size_t>(sigma) + 1, std::vector<double>(N, 1.0));
  for (int p = 1; p <= sigma; ++p)
    for (int i = 0; i < N; ++i) pw[p][i] = pw[p - 1][i] * g.wave(i) * g.dk();

  std::vector<cplx> work(n);
  double total = 0.0;
  for (const auto& a : alphas) {
    const cplx ia = std::pow(cplx(0.0, 1.0), a[0] + a[1]);
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < N; ++c) {
        const std::size_t i = g.index(r, c);
        const double k = g.kabs()[i];
        if (k == 0.0 || r == N / 2 || c == N / 2) {
          work[i] = 0.0;
          continue;
        }
        // (i xi)^alpha Y^ through R_1 and R_2, packed as R_1 part + i R_2 part;
        // both parts are real fields
        const cplx d = ia * (pw[a[0]][r] * pw[a[1]][c]) * y[i];
        work[i] = cplx(0.0, g.k1()[i] / k) * d - (g.k2()[i] / k) * d;
      }
    }
    backward_inplace(g, work.data());
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += q[i] * std::norm(work[i]);
    total += acc;
  }
  return total * g.cell();
}

double energy_sigma(const ComplexUnknown& U, int sigma) {
  return weighted_sobolev_square(U.u, sigma) + energy_sigma_cubic(U, sigma);
}

LinfObservables linf_observables(const PerturbationState& s) {
  const SpectralField rho = to_frequency(s.rho);
  const SpectralField h = to_frequency(s.h);
  const Grid& g = rho.grid();
  const std::size_t n = g.size();
  std::vector<cplx> r = rho.values(), d11(n), d22(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.on_nyquist(i)) continue;
    const double a = g.k1()[i], b = g.k2()[i];
    // d11 h + i d12 h, and d22 h; all real fields
    d11[i] = -a * a * h[i] + cplx(0.0, 1.0) * (-a * b * h[i]);
    d22[i] = -b * b * h[i];
  }
  backward_inplace(g, r.data());
  backward_inplace(g, d11.data());
  backward_inplace(g, d22.data());
  LinfObservables o;
  const auto& K = simd::kernels();
  o.density = K.max_abs_real(r.data(), n);
  double m12 = 0.0;
  for (const cplx& z : d11) m12 = std::max(m12, std::abs(z.imag()));
  o.gradv = std::max({K.max_abs_real(d11.data(), n), K.max_abs_real(d22.data(), n), m12});
  return o;
}

NormReport make_report(const ComplexUnknown& U, double t, const ReportConfig& cfg) {
  NormReport r;
  r.time = t;
  const SpectralField& u = U.u;
  std::vector<int> orders = cfg.h_orders;
  orders.push_back(cfg.n_top);
  for (int s : orders) r.h_norms[s] = sobolev_norm(u, s);
  r.z_prime = z_prime_norm(u, cfg.weights);
  if (cfg.profile_norms) {
    const SpectralField v = propagate_linear(u, -t);
    r.z_norm = z_norm(v, cfg.weights);
    r.y_norm = sobolev_norm(v, cfg.n0) + *r.z_norm;
    r.y_order = cfg.n0;
  }
  const PerturbationState s = to_state(U, t);
  const LinfObservables o = linf_observables(s);
  r.linf_density = o.density;
  r.linf_gradv = o.gradv;
  for (int sigma : cfg.sigma_list) r.e_sigma[sigma] = energy_sigma(U, sigma);
  r.e_physical = conserved_energy(s);
  r.diag = diagnostics(s);
  return r;
}

double x_norm_tracker(const std::vector<NormReport>& history, int N, int N0, double delta) {
  if (history.empty()) throw InputError("x_norm_tracker needs a nonempty history");
  double a = 0.0, b = 0.0;
  for (const NormReport& r : history) {
    auto it = r.h_norms.find(N);
    if (it == r.h_norms.end()) throw InputError("report lacks the H^N norm");
    if (!r.y_norm || r.y_order != N0) throw InputError("report lacks profile Y norms");
    a = std::max(a, std::pow(1.0 + r.time, -delta) * it->second);
    b = std::max(b, *r.y_norm);
  }
  return a + b;
}

}  // namespace ep2d
