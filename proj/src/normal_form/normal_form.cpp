#include "ep2d/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ep2d/dispersion.hpp"

namespace ep2d {

SpectralField profile_of(const ComplexUnknown& U, double t) {
  return propagate_linear(to_frequency(U.u), t, Sign::minus);
}

ComplexUnknown unknown_of_profile(const SpectralField& V, double t) {
  return {propagate_linear(to_frequency(V), t, Sign::plus)};
}

std::vector<std::size_t> resolve_frequencies(const Grid& g, const std::vector<Vec2>& xi) {
  std::vector<std::size_t> out;
  out.reserve(xi.size());
  const int B = g.band_limit();
  for (const Vec2& v : xi) {
    const double w1 = v.x / g.dk(), w2 = v.y / g.dk();
    const bool finite = std::isfinite(w1) && std::isfinite(w2);
    const int r1 = finite ? static_cast<int>(std::clamp(std::lround(w1), -static_cast<long>(B), static_cast<long>(B))) : 0;
    const int r2 = finite ? static_cast<int>(std::clamp(std::lround(w2), -static_cast<long>(B), static_cast<long>(B))) : 0;
    const bool on = finite && std::abs(w1 - r1) <= 1e-9 * std::max(1.0, std::abs(w1)) &&
                    std::abs(w2 - r2) <= 1e-9 * std::max(1.0, std::abs(w2));
    if (!on) {
      const Vec2 near{r1 * g.dk(), r2 * g.dk()};
      std::ostringstream os;
      os.precision(17);
      os << "frequency (" << v.x << ", " << v.y << ") is not a retained lattice point; nearest is ("
         << near.x << ", " << near.y << ")";
      throw OffLatticeError(os.str(), near);
    }
    out.push_back(static_cast<std::size_t>(g.index_of_wave(r1, r2)));
  }
  return out;
}

std::vector<Vec2> default_output_frequencies(const Grid& g, int count) {
  if (count < 1) throw InputError("output frequency count must be positive");
  const int B = g.band_limit();
  std::vector<Vec2> out;
  std::set<std::pair<int, int>> seen;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double rmax = 0.95 * B;
  for (int j = 0; static_cast<int>(out.size()) < count && j < 64 * count; ++j) {
    const double s = count > 1 ? static_cast<double>(j % count) / (count - 1) : 0.0;
    const double r = std::pow(rmax, s);  // 1 .. rmax, log spaced
    const double th = golden * j;
    const int w1 = static_cast<int>(std::lround(r * std::cos(th)));
    const int w2 = static_cast<int>(std::lround(r * std::sin(th)));
    if ((w1 == 0 && w2 == 0) || !g.in_band(w1, w2)) continue;
    if (!seen.insert({w1, w2}).second) continue;
    out.push_back({w1 * g.dk(), w2 * g.dk()});
  }
  return out;
}

namespace {

struct Lattice {
  const Grid& g;
  int B;
  std::vector<cplx> up, um;  // U^_+ and U^_- on the grid

  Lattice(const Grid& grid, const std::vector<cplx>& u) : g(grid), B(grid.band_limit()) {
    const std::size_t n = g.size();
    up.resize(n);
    um.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      up[i] = g.band_mask()[i] * u[i];
      um[i] = g.band_mask()[g.mirror()[i]] * std::conj(u[g.mirror()[i]]);
    }
  }
  // index of an in-band wave, -1 otherwise
  std::ptrdiff_t at(int w1, int w2) const {
    if (std::abs(w1) > B || std::abs(w2) > B) return -1;
    return g.index_of_wave(w1, w2);
  }
  Vec2 vec(int w1, int w2) const { return {w1 * g.dk(), w2 * g.dk()}; }
  bool in_band(Vec2 v) const {
    const double lim = (B + 0.5) * g.dk();
    return std::abs(v.x) <= lim && std::abs(v.y) <= lim;
  }
  const std::vector<cplx>& pick(int s) const { return s > 0 ? up : um; }
};

std::pair<int, int> waves_of(const Grid& g, std::size_t idx) {
  const int i = static_cast<int>(idx / g.n()), j = static_cast<int>(idx % g.n());
  return {g.wave(i), g.wave(j)};
}

// sum_{mu nu} sum_eta (m/Phi)(xi, eta) F_mu(xi - eta) G_nu(eta)
cplx quadratic_sum(const Lattice& L, const Dispersion& d, int x1, int x2,
                   const std::vector<cplx>& fp, const std::vector<cplx>& fm,
                   const std::vector<cplx>& gp, const std::vector<cplx>& gm) {
  const Vec2 xi = L.vec(x1, x2);
  cplx acc = 0.0;
  for (int e1 = -L.B; e1 <= L.B; ++e1) {
    for (int e2 = -L.B; e2 <= L.B; ++e2) {
      const std::ptrdiff_t ie = L.at(e1, e2);
      const std::ptrdiff_t id = L.at(x1 - e1, x2 - e2);
      if (id < 0) continue;
      const Vec2 eta = L.vec(e1, e2);
      for (PairSig s : kPairs) {
        const cplx f = first(s) > 0 ? fp[id] : fm[id];
        const cplx gg = second(s) > 0 ? gp[ie] : gm[ie];
        if (f == 0.0 || gg == 0.0) continue;
        const cplx m = bilinear_symbol_eval(s, xi, eta, d);
        if (m == 0.0) continue;
        acc += m / phase_bilinear(s, xi, eta, d) * f * gg;
      }
    }
  }
  return acc;
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

std::vector<cplx> w_profile(const ComplexUnknown& U, double t, const std::vector<Vec2>& xi) {
  const SpectralField uh = to_frequency(U.u);
  const Grid& g = uh.grid();
  const std::vector<std::size_t> idx = resolve_frequencies(g, xi);
  const Lattice L(g, uh.values());
  const Dispersion d = dispersion_of(g);
  std::vector<cplx> out(idx.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(idx.size()); ++k) {
    const auto [x1, x2] = waves_of(g, idx[k]);
    const cplx q = quadratic_sum(L, d, x1, x2, L.up, L.um, L.up, L.um) * g.dual_cell();
    out[k] = std::polar(1.0, t * g.lambda()[idx[k]]) * (L.up[idx[k]] + cplx(0.0, 1.0) * q);
  }
  return out;
}

SpectralField w_profile_full(const ComplexUnknown& U, double t) {
  const Grid& g = U.grid();
  if (g.n() > kFullWMaxN) throw InputError("full-grid W is limited to N <= 48");
  std::vector<Vec2> xi;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.band_mask()[i] == 0.0) continue;
    xi.push_back(g.frequency(i));
    where.push_back(i);
  }
  const std::vector<cplx> w = w_profile(U, t, xi);
  SpectralField out(U.u.grid_ptr(), Representation::frequency);
  for (std::size_t k = 0; k < where.size(); ++k) out.mutable_values()[where[k]] = w[k];
  return out;
}

std::vector<cplx> w_derivative_direct(const ComplexUnknown& U, double t,
                                      const std::vector<Vec2>& xi) {
  const SpectralField uh = to_frequency(U.u);
  const Grid& g = uh.grid();
  const std::vector<std::size_t> idx = resolve_frequencies(g, xi);
  NonlinearityEvaluator nl(uh.grid_ptr());
  std::vector<cplx> q(g.size());
  nl(uh.values().data(), q.data());
  const Lattice L(g, uh.values());
  const Lattice Q(g, q);
  const Dispersion d = dispersion_of(g);
  std::vector<cplx> out(idx.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(idx.size()); ++k) {
    const auto [x1, x2] = waves_of(g, idx[k]);
    const cplx s = quadratic_sum(L, d, x1, x2, Q.up, Q.um, L.up, L.um) +
                   quadratic_sum(L, d, x1, x2, L.up, L.um, Q.up, Q.um);
    out[k] = cplx(0.0, 1.0) * std::polar(1.0, t * g.lambda()[idx[k]]) * s * g.dual_cell();
  }
  return out;
}

std::vector<std::array<cplx, 4>> cubic_rhs_channels(const ComplexUnknown& U, double t,
                                                    const std::vector<Vec2>& xi, double window) {
  if (!(window >= 0.0) || !std::isfinite(window)) throw InputError("window must be finite and nonnegative");
  const SpectralField uh = to_frequency(U.u);
  const Grid& g = uh.grid();
  const std::vector<std::size_t> idx = resolve_frequencies(g, xi);
  const Lattice L(g, uh.values());
  const Dispersion d = dispersion_of(g);
  const double w4 = g.dual_cell() * g.dual_cell();
  std::vector<std::array<cplx, 4>> out(idx.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(idx.size()); ++k) {
    const auto [x1, x2] = waves_of(g, idx[k]);
    const Vec2 xv = L.vec(x1, x2);
    std::array<cplx, 4> acc{};
    CubicAddend terms[6];
    for (int e1 = x1 - L.B; e1 <= x1 + L.B; ++e1) {
      for (int e2 = x2 - L.B; e2 <= x2 + L.B; ++e2) {
        const std::ptrdiff_t i_xe = L.at(x1 - e1, x2 - e2);
        if (i_xe < 0) continue;
        const Vec2 eta = L.vec(e1, e2);
        for (int c1 = e1 - L.B; c1 <= e1 + L.B; ++c1) {
          for (int c2 = e2 - L.B; c2 <= e2 + L.B; ++c2) {
            const std::ptrdiff_t i_c = L.at(c1, c2);
            const std::ptrdiff_t i_ec = L.at(e1 - c1, e2 - c2);
            if (i_c < 0 || i_ec < 0) continue;
            const Vec2 chi = L.vec(c1, c2);
            for (int ch = 0; ch < 4; ++ch) {
              const TripleSig sig = kTriples[ch];
              const auto s = signs(sig);
              const cplx prod = L.pick(s[0])[i_xe] * L.pick(s[1])[i_ec] * L.pick(s[2])[i_c];
              if (prod == 0.0) continue;
              const int na = cubic_addends(sig, xv, eta, chi, d, kC0, terms, nullptr);
              cplx m = 0.0;
              for (int a = 0; a < na; ++a)
                if (L.in_band(terms[a].intermediate)) m += terms[a].value;
              if (m == 0.0) continue;
              const double f = window > 0.0 ? sinc(window * phase_trilinear(sig, xv, eta, chi, d)) : 1.0;
              acc[ch] += f * m * prod;
            }
          }
        }
      }
    }
    const cplx pre = cplx(0.0, 1.0) * std::polar(1.0, t * g.lambda()[idx[k]]) * w4;
    for (cplx& c : acc) c *= pre;
    out[k] = acc;
  }
  return out;
}

std::vector<cplx> cubic_rhs(const ComplexUnknown& U, double t, const std::vector<Vec2>& xi,
                            double window) {
  const auto ch = cubic_rhs_channels(U, t, xi, window);
  std::vector<cplx> out(ch.size());
  for (std::size_t k = 0; k < ch.size(); ++k) out[k] = ch[k][0] + ch[k][1] + ch[k][2] + ch[k][3];
  return out;
}

}  // namespace ep2d
