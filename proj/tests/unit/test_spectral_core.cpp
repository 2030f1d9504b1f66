#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <filesystem>

#include "ep2d/dyadic.hpp"
#include "ep2d/field_io.hpp"

using namespace ep2d;
using namespace testutil;

TEST_CASE("constant field transforms to the mean mode") {
  auto g = Grid::make(16, 10.0, 1.0, 1.0);
  SpectralField c(g, Representation::physical, std::vector<cplx>(g->size(), 2.5));
  auto ch = to_frequency(c);
  CHECK(std::abs(ch[0]) > 0.0);
  for (std::size_t i = 1; i < ch.size(); ++i) CHECK(std::abs(ch[i]) < 1e-13);
  // continuum convention: f^(0) = (1/2pi) int f
  CHECK(ch[0].real() == doctest::Approx(2.5 * 100.0 / kTwoPi).epsilon(1e-13));
}

TEST_CASE("single cosine gives two symmetric modes") {
  auto g = Grid::make(32, 7.0, 1.0, 1.0);
  std::vector<cplx> v(g->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::cos(kTwoPi * g->position(i).x / 7.0);
  auto fh = to_frequency(SpectralField(g, Representation::physical, v));
  const auto ip = g->index_of_wave(1, 0), im = g->index_of_wave(-1, 0);
  CHECK(std::abs(fh[ip]) == doctest::Approx(std::abs(fh[im])).epsilon(1e-13));
  double other = 0.0;
  for (std::size_t i = 0; i < fh.size(); ++i)
    if (static_cast<std::ptrdiff_t>(i) != ip && static_cast<std::ptrdiff_t>(i) != im)
      other = std::max(other, std::abs(fh[i]));
  CHECK(other < 1e-13 * std::abs(fh[ip]));
}

TEST_CASE("fft round trip is unitary") {
  for (int n : {8, 32, 64}) {
    auto g = Grid::make(n, 13.0, 1.0, 1.0);
    auto f = random_complex(g, 7 + n);
    auto back = to_physical(to_frequency(f));
    CHECK(max_abs_diff(f, back) / max_abs(f) < 1e-12);
    CHECK(l2_norm(to_frequency(f)) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  }
}

TEST_CASE("multipliers act diagonally") {
  auto g = Grid::make(32, 20.0, 1.0, 1.0);
  auto f = random_real(g, 3);
  CHECK(max_abs_diff(apply_multiplier(f, multipliers::identity()), f) < 1e-13);
  SpectralField c(g, Representation::physical, std::vector<cplx>(g->size(), 1.0));
  auto lc = apply_multiplier(c, multipliers::lambda(1.0, 1.0));
  CHECK(max_abs_diff(lc, c) < 1e-12);
  // Riesz of a real field stays real
  auto r1 = to_physical(apply_multiplier(to_frequency(f), multipliers::riesz(1)));
  double im = 0.0;
  for (const cplx& z : r1.values()) im = std::max(im, std::abs(z.imag()));
  CHECK(im < 1e-13 * max_abs(r1));
  CHECK(hermitian_defect(apply_multiplier(to_frequency(f), multipliers::riesz(2))) < 1e-13);
  // |grad| = -sum R_j d_j
  auto fh = to_frequency(f);
  auto lhs = apply_multiplier(fh, multipliers::abs_grad());
  auto rhs = add(apply_multiplier(apply_multiplier(fh, multipliers::partial(1)), multipliers::riesz(1)),
                 apply_multiplier(apply_multiplier(fh, multipliers::partial(2)), multipliers::riesz(2)));
  CHECK(max_abs_diff(lhs, scaled(rhs, -1.0)) < 1e-11 * max_abs(lhs));
}

TEST_CASE("cutoff profile plateau and support") {
  CHECK(cutoff_profile(0.0) == 1.0);
  CHECK(cutoff_profile(1.25) == 1.0);
  CHECK(cutoff_profile(-1.1) == 1.0);
  CHECK(cutoff_profile(1.6) == 0.0);
  CHECK(cutoff_profile(3.0) == 0.0);
  double prev = 1.0;
  for (double s = 1.25; s <= 1.6; s += 0.01) {
    const double v = cutoff_profile(s);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  // symmetric transition
  CHECK(cutoff_profile(1.425) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(band_symbol(0, 1.0) == 1.0);
  CHECK(band_symbol(5, 1.0) == 0.0);
}

TEST_CASE("dyadic partition of unity") {
  auto g = Grid::make(64, 30.0, 1.0, 1.0);
  auto f = random_real(g, 5);
  auto fh = to_frequency(f);
  fh.mutable_values()[0] = 0.0;
  const BandRange br = representable_bands(*g);
  SpectralField sum(g, Representation::frequency);
  for (int k = br.lo; k <= br.hi; ++k) {
    auto p = lp_project(fh, k);
    REQUIRE(p.representable);
    sum = add(sum, p.field);
  }
  CHECK(max_abs_diff(sum, fh) < 1e-10 * max_abs(fh));
  // single mode at |xi| = 1
  auto g2 = Grid::make(16, kTwoPi, 1.0, 1.0);
  auto m = mode(g2, 1, 0, 1.0);
  CHECK(max_abs_diff(lp_project(m, 0).field, m) < 1e-15);
  CHECK(max_abs(lp_project(m, 5).field) == 0.0);
  CHECK_FALSE(lp_project(m, 40).representable);
}

TEST_CASE("dealias mask") {
  auto g = Grid::make(32, 10.0, 1.0, 1.0);
  auto inb = dealias(to_frequency(random_real(g, 9, false)));
  CHECK(max_abs_diff(dealias(inb), inb) == 0.0);
  auto hi = mode(g, 15, 3, 1.0, true);
  CHECK(max_abs(dealias(hi)) == 0.0);
  // dealiased pseudo-spectral product equals the exact in-band convolution
  auto f = to_frequency(random_real(g, 11)), h = to_frequency(random_real(g, 12));
  std::vector<cplx> pf = to_physical(f).values(), ph = to_physical(h).values();
  for (std::size_t i = 0; i < pf.size(); ++i) pf[i] *= ph[i];
  auto prod = dealias(to_frequency(SpectralField(g, Representation::physical, pf)));
  const int n = g->n(), bl = g->band_limit();
  double err = 0.0, scale = 0.0;
  for (int a1 = -bl; a1 <= bl; ++a1)
    for (int a2 = -bl; a2 <= bl; ++a2) {
      cplx acc = 0.0;
      for (int b1 = -bl; b1 <= bl; ++b1)
        for (int b2 = -bl; b2 <= bl; ++b2) {
          const int c1 = a1 - b1, c2 = a2 - b2;
          if (std::abs(c1) > bl || std::abs(c2) > bl) continue;
          acc += f[g->index_of_wave(c1, c2)] * h[g->index_of_wave(b1, b2)];
        }
      acc *= g->dual_cell() / kTwoPi;
      err = std::max(err, std::abs(acc - prod[g->index_of_wave(a1, a2)]));
      scale = std::max(scale, std::abs(acc));
    }
  (void)n;
  CHECK(err < 1e-12 * scale);
}

TEST_CASE("field io round trip") {
  auto g = Grid::make(16, 9.5, 2.0, 3.0);
  auto f = to_frequency(random_complex(g, 4));
  const auto path = (std::filesystem::temp_directory_path() / "ep2d_io_test.bin").string();
  write_field(path, f);
  auto r = read_field(path);
  CHECK(r.grid().n() == 16);
  CHECK(r.grid().length() == 9.5);
  CHECK(r.grid().a() == 2.0);
  CHECK(r.grid().b() == 3.0);
  CHECK(r.is_frequency());
  CHECK(max_abs_diff(r, f) == 0.0);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_field(path), InputError);
}
