#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "ep2d/dispersion.hpp"
#include "ep2d/initial_data.hpp"
#include "ep2d/model.hpp"
#include "ep2d/symbols.hpp"

using namespace ep2d;
using namespace testutil;

namespace {

PerturbationState zero_state(const GridPtr& g) {
  return {SpectralField(g, Representation::frequency), SpectralField(g, Representation::frequency), 0.0};
}

double rel_l2(const SpectralField& a, const SpectralField& b) {
  return l2_norm(add(a, b, -1.0)) / l2_norm(b);
}

}  // namespace

TEST_CASE("unknown state round trip") {
  auto g = Grid::make(32, 12.0, 1.0, 1.0);
  CHECK(max_abs(to_unknown(zero_state(g)).u) == 0.0);
  CHECK(max_abs(to_state(ComplexUnknown{SpectralField(g, Representation::frequency)}).rho) == 0.0);
  // rho single mode at |xi| = 1 gives U^ = Lambda / |xi| = sqrt 2
  auto g1 = Grid::make(16, kTwoPi, 1.0, 1.0);
  PerturbationState s = zero_state(g1);
  s.rho = mode(g1, 1, 0, 1.0, true);
  const auto U = to_unknown(s);
  CHECK(U.u[g1->index_of_wave(1, 0)].real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // random band limited U
  auto Ur = random_unknown(g, 5, 0.3);
  auto back = to_unknown(to_state(Ur));
  CHECK(max_abs_diff(back.u, Ur.u) < 1e-12 * max_abs(Ur.u));
  // purely imaginary U: density stays zero
  auto iu = mode(g, 2, 1, cplx(0, 1.0));
  iu.mutable_values()[g->index_of_wave(-2, -1)] += cplx(0, 1.0);
  auto im = to_state(ComplexUnknown{iu});
  CHECK(max_abs(im.rho) < 1e-15);
  CHECK(max_abs(im.h) > 0.0);
}

TEST_CASE("real imaginary split") {
  auto g = Grid::make(16, 9.0, 1.0, 1.0);
  auto U = random_unknown(g, 8, 1.0);
  std::vector<cplx> x(g->size()), y(g->size());
  split_real_imag(*g, U.u.values().data(), x.data(), y.data());
  auto xp = to_physical(SpectralField(g, Representation::frequency, x));
  auto yp = to_physical(SpectralField(g, Representation::frequency, y));
  auto up = to_physical(U.u);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(std::abs(xp[i].imag()) < 1e-13);
    CHECK(std::abs(yp[i].imag()) < 1e-13);
    CHECK(std::abs(xp[i].real() + cplx(0, 1) * yp[i].real() - up[i]) < 1e-12);
  }
}

TEST_CASE("physical and spectral nonlinearities agree") {
  auto g = Grid::make(32, 14.0, 1.0, 1.0);
  const ComplexUnknown U0{SpectralField(g, Representation::frequency)};
  CHECK(max_abs(nonlinearity_physical(U0)) == 0.0);
  CHECK(max_abs(nonlinearity_spectral(U0)) == 0.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto U = random_unknown(g, seed, 0.5);
    auto np = nonlinearity_physical(U), ns = nonlinearity_spectral(U);
    CHECK(rel_l2(np, ns) < 1e-10);
  }
  // U real: both forms vanish
  auto Ur = to_frequency(random_real(g, 4));
  auto nr = nonlinearity_physical(ComplexUnknown{Ur});
  CHECK(max_abs(nr) < 1e-14 * max_abs(Ur) * max_abs(Ur) + 1e-300);
  CHECK(max_abs(nonlinearity_spectral(ComplexUnknown{Ur})) < 1e-14 * max_abs(Ur) * max_abs(Ur) + 1e-300);
  // the a, b dependence enters both forms the same way
  auto g2 = Grid::make(32, 14.0, 2.0, 0.5);
  auto U2 = random_unknown(g2, 7, 0.5);
  CHECK(rel_l2(nonlinearity_physical(U2), nonlinearity_spectral(U2)) < 1e-10);
}

TEST_CASE("two mode nonlinearity by hand") {
  auto g = Grid::make(32, 16.0, 1.0, 1.0);
  const int p1 = 2, p2 = 1, q1 = -1, q2 = 3;
  const cplx A(0.3, -0.2), B(-0.1, 0.4);
  SpectralField u = add(mode(g, p1, p2, A), mode(g, q1, q2, B));
  const ComplexUnknown U{u};
  const double dk = g->dk();
  const Vec2 p{p1 * dk, p2 * dk}, q{q1 * dk, q2 * dk}, xi = p + q;
  const Dispersion d{1, 1};
  const cplx hand = (bilinear_symbol_eval(PairSig::pp, xi, q, d) + bilinear_symbol_eval(PairSig::pp, xi, p, d)) * A *
                    B * g->dual_cell();
  const auto idx = g->index_of_wave(p1 + q1, p2 + q2);
  CHECK(std::abs(nonlinearity_spectral(U)[idx] - hand) < 1e-14);
  CHECK(std::abs(nonlinearity_physical(U)[idx] - hand) < 1e-13);
}

TEST_CASE("energy agrees in both spaces") {
  auto g = Grid::make(32, 12.0, 1.0, 1.0);
  CHECK(conserved_energy(zero_state(g)) == 0.0);
  // rho = 0, single mode h: E = 1/2 int |grad h|^2
  PerturbationState s = zero_state(g);
  s.h = mode(g, 2, -1, cplx(0.2, 0.1), true);
  const double k2 = std::pow(g->dk(), 2) * 5;
  const double parseval = 0.5 * k2 * 2 * std::norm(cplx(0.2, 0.1)) * g->dual_cell();
  CHECK(conserved_energy(s) == doctest::Approx(parseval).epsilon(1e-12));
  CHECK(conserved_energy_frequency(s) == doctest::Approx(parseval).epsilon(1e-12));
  // general small states: nonnegative and both evaluations agree
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    auto st = to_state(random_unknown(g, seed, 0.2));
    const double e = conserved_energy(st);
    CHECK(e >= 0.0);
    CHECK(conserved_energy_frequency(st) == doctest::Approx(e).epsilon(1e-11));
  }
}

TEST_CASE("diagnostics on constructed data") {
  auto g = Grid::make(64, 20.0, 1.0, 1.0);
  const Diagnostics eq = diagnostics(zero_state(g));
  CHECK(eq.neutrality_residual == 0.0);
  CHECK(eq.curl_residual == 0.0);
  CHECK(eq.min_density == 1.0);
  auto st = to_state(random_unknown(g, 6, 1.0));
  CHECK(diagnostics(st).curl_residual <= 1e-12);
  CHECK(diagnostics(st).neutrality_residual <= 1e-12);
  // negative bump of depth 0.5 at the origin
  InitRecipe r;
  r.kind = "gaussian_rho";
  r.amplitude = -0.5;
  r.width = 1.0;
  const auto bump = make_initial_state(g, r);
  const auto rho = to_physical(bump.rho);
  double mn = INFINITY;
  for (const cplx& z : rho.values()) mn = std::min(mn, z.real());
  CHECK(diagnostics(bump).min_density == doctest::Approx(1.0 + mn).epsilon(1e-14));
  CHECK(diagnostics(bump).min_density == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("initial data recipes") {
  auto g = Grid::make(32, 20.0, 1.0, 1.0);
  InitRecipe r;
  r.kind = "mode_pair";
  r.amplitude = 0.01;
  r.k_vector = {2, 1};
  const auto s = make_initial_state(g, r);
  double mx = 0.0;
  for (const cplx& z : to_physical(s.rho).values()) mx = std::max(mx, std::abs(z.real()));
  CHECK(mx == doctest::Approx(0.01).epsilon(1e-12));
  r.kind = "random";
  r.amplitude = 0.2;
  CHECK(l2_norm(make_initial_unknown(g, r).u) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(max_abs_diff(make_initial_unknown(g, r).u, make_initial_unknown(g, r).u) == 0.0);
  r.kind = "gaussian_h";
  r.amplitude = 0.0;
  CHECK(max_abs(make_initial_unknown(g, r).u) == 0.0);
}
