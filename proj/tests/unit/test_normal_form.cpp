#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "ep2d/dispersion.hpp"
#include "ep2d/initial_data.hpp"
#include "ep2d/normal_form.hpp"
#include "ep2d/symbols.hpp"
#include "ep2d/timestepper.hpp"

using namespace ep2d;
using namespace testutil;

namespace {

const Dispersion kD11{1, 1};

// values from a 50-digit mpmath evaluation of the symbol formulas, c0 = 1
constexpr double kPP21 = -0.6452847075210474165;
constexpr double kPM21 = 0.5;
constexpr double kMM21 = 0.1452847075210474165;
constexpr double kCubicPPP = 0.033035616431248140942;
constexpr double kCubicPPM = -0.090324274574768320906;
constexpr double kCubicPMM = -0.11871851759853584038;
constexpr double kCubicMMM = 0.14868130395220546703;

}  // namespace

TEST_CASE("bilinear symbols match quadratic form") {
  const double v = 1.0 / (8.0 * std::sqrt(2.0));
  const cplx pp = bilinear_symbol_eval(PairSig::pp, {1, 0}, {0, 1}, kD11, 1.0);
  const cplx mm = bilinear_symbol_eval(PairSig::mm, {1, 0}, {0, 1}, kD11, 1.0);
  CHECK(pp.real() == 0.0);
  CHECK(pp.imag() == doctest::Approx(v).epsilon(1e-15));
  CHECK(mm.imag() == doctest::Approx(v).epsilon(1e-15));
  CHECK(bilinear_symbol_eval(PairSig::pp, {2, 0}, {1, 0}, kD11, 1.0).imag() == doctest::Approx(kPP21).epsilon(1e-15));
  CHECK(bilinear_symbol_eval(PairSig::pm, {2, 0}, {1, 0}, kD11, 1.0).imag() == doctest::Approx(kPM21).epsilon(1e-15));
  CHECK(bilinear_symbol_eval(PairSig::mm, {2, 0}, {1, 0}, kD11, 1.0).imag() == doctest::Approx(kMM21).epsilon(1e-15));
  // vanishing at degenerate arguments
  for (PairSig s : kPairs) {
    CHECK(bilinear_symbol_eval(s, {0, 0}, {1, 2}, kD11) == cplx(0.0));
    CHECK(bilinear_symbol_eval(s, {1, 2}, {0, 0}, kD11) == cplx(0.0));
    CHECK(bilinear_symbol_eval(s, {1, 2}, {1, 2}, kD11) == cplx(0.0));
  }
  // linear in c0
  const cplx c(0.3, -1.2);
  CHECK(std::abs(bilinear_symbol_eval(PairSig::pm, {0.4, 1}, {-1, 0.2}, kD11, c) -
                 c * bilinear_symbol_eval(PairSig::pm, {0.4, 1}, {-1, 0.2}, kD11, 1.0)) < 1e-15);
}

TEST_CASE("flip symbol") {
  const BilinearSymbol mpp(PairSig::pp, kD11, 1.0);
  const BilinearSymbol f = flip_symbol(mpp);
  CHECK(f.flipped());
  CHECK(f.signature() == std::array<int, 2>{-1, -1});
  const cplx want = std::conj(bilinear_symbol_eval(PairSig::pp, {-1, 0}, {0, -1}, kD11, 1.0));
  CHECK(std::abs(f({1, 0}, {0, 1}) - want) < 1e-16);
  CHECK(f({1, 0}, {0, 1}).imag() == doctest::Approx(-1.0 / (8.0 * std::sqrt(2.0))).epsilon(1e-15));
  const BilinearSymbol ff = flip_symbol(f);
  for (PairSig s : kPairs) {
    const BilinearSymbol m(s, {1.3, 0.7}, cplx(0.2, 0.5));
    const BilinearSymbol back = flip_symbol(flip_symbol(m));
    for (const auto& [x, y] : {std::pair<Vec2, Vec2>{{1, 2}, {-0.5, 0.1}}, {{0.3, -0.3}, {2, 2}}, {{-4, 1}, {1, 1}}}) {
      CHECK(std::abs(back(x, y) - m(x, y)) < 1e-15);
      // flipping after conjugating c0 rescales by c0 / conj(c0)
      const cplx c(0.2, 0.5);
      const BilinearSymbol mc(s, {1.3, 0.7}, std::conj(c), true);
      CHECK(std::abs(mc(x, y) - (c / std::conj(c)) * flip_symbol(m)(x, y)) < 1e-14);
    }
  }
  CHECK(std::abs(ff({1, 0}, {0, 1}) - mpp({1, 0}, {0, 1})) < 1e-16);
}

TEST_CASE("cubic symbol pins") {
  const Vec2 xi{1.0, 0.5}, eta{0.3, -0.7}, chi{-0.4, 0.2};
  const std::pair<TripleSig, double> pins[] = {
      {TripleSig::ppp, kCubicPPP}, {TripleSig::ppm, kCubicPPM}, {TripleSig::pmm, kCubicPMM}, {TripleSig::mmm, kCubicMMM}};
  for (const auto& [s, want] : pins) {
    INFO(name(s));
    const CubicValue v = cubic_symbol_eval(s, xi, eta, chi, kD11, 1.0);
    CHECK_FALSE(v.singular);
    CHECK(v.value.real() == doctest::Approx(want).epsilon(1e-13));
    CHECK(std::abs(v.value.imag()) < 1e-15);
    // c0 enters squared
    const CubicValue w = cubic_symbol_eval(s, xi, eta, chi, kD11, 0.5);
    CHECK(std::abs(w.value - 0.25 * v.value) < 1e-16);
  }
  CHECK(std::abs(cubic_symbol_eval(TripleSig::mmm, {1, 0}, {1, 0}, {1, 0}, kD11, 1.0).value) == 0.0);
  CubicAddend buf[6];
  bool singular = false;
  CHECK(cubic_addends(TripleSig::ppp, xi, eta, chi, kD11, 1.0, buf, &singular) == 3);
  CHECK(cubic_addends(TripleSig::ppm, xi, eta, chi, kD11, 1.0, buf, &singular) == 6);
}

TEST_CASE("profile round trip") {
  auto g = Grid::make(32, 12.0, 1.0, 4.0);
  auto U = random_unknown(g, 2, 0.1);
  CHECK(max_abs_diff(profile_of(U, 0.0), U.u) == 0.0);
  const auto V = profile_of(U, 2.3);
  CHECK(l2_norm(V) == doctest::Approx(l2_norm(U.u)).epsilon(1e-12));
  CHECK(max_abs_diff(unknown_of_profile(V, 2.3).u, U.u) < 1e-12 * max_abs(U.u));
  // linear flow freezes the profile
  StepperConfig c;
  c.dt = 0.05;
  c.horizon = 1.0;
  c.nonlinear = false;
  const RunSummary r = run(U, c);
  CHECK(max_abs_diff(profile_of(r.final_state, 1.0), U.u) < 1e-12 * max_abs(U.u));
}

TEST_CASE("frequency resolution") {
  auto g = Grid::make(16, kTwoPi, 1.0, 1.0);
  CHECK(resolve_frequencies(*g, {{1, 2}, {-3, 0}}).size() == 2);
  try {
    resolve_frequencies(*g, {{1.3, 2}});
    FAIL("off lattice frequency accepted");
  } catch (const OffLatticeError& e) {
    CHECK(e.nearest.x == 1.0);
    CHECK(e.nearest.y == 2.0);
    CHECK(std::string(e.what()).find("nearest") != std::string::npos);
  }
  CHECK_THROWS_AS(resolve_frequencies(*g, {{7, 0}}), OffLatticeError);
  const auto d = default_output_frequencies(*g, 10);
  CHECK(d.size() == 10);
  CHECK(resolve_frequencies(*g, d).size() == 10);
  CHECK(default_output_frequencies(*g, 10) == d);
}

TEST_CASE("corrected profile basics") {
  auto g = Grid::make(16, 4 * kPi, 1.0, 1.0);
  const std::vector<Vec2> xs = default_output_frequencies(*g, 6);
  const ComplexUnknown zero{SpectralField(g, Representation::frequency)};
  for (const cplx& z : w_profile(zero, 0.5, xs)) CHECK(z == cplx(0.0));
  for (const cplx& z : cubic_rhs(zero, 0.5, xs)) CHECK(z == cplx(0.0));
  // correction is quadratic in the amplitude
  auto U = random_unknown(g, 3, 0.05, 0.5);
  const ComplexUnknown U2{scaled(U.u, 2.0)};
  const double t = 0.7;
  const auto w1 = w_profile(U, t, xs), w2 = w_profile(U2, t, xs);
  const auto idx = resolve_frequencies(*g, xs);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const cplx lin = std::polar(1.0, t * g->lambda()[idx[k]]) * U.u[idx[k]];
    CHECK(std::abs((w2[k] - 2.0 * lin) - 4.0 * (w1[k] - lin)) < 1e-12 * std::max(1.0, std::abs(w2[k])));
  }
  // the full-grid evaluation agrees with the pointwise one
  const auto full = w_profile_full(U, t);
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(std::abs(full[idx[k]] - w1[k]) < 1e-14);
  // duplicated frequencies give identical rows
  const std::vector<Vec2> dup{xs[1], xs[1]};
  const auto wd = w_profile(U, t, dup);
  CHECK(wd[0] == wd[1]);
}

TEST_CASE("cubic symbols match H route") {
  // dW/dt from the quadratic correction with dU/dt = N(U) equals the cubic sum
  auto g = Grid::make(16, 4 * kPi, 1.0, 1.0);
  const std::vector<Vec2> xs = default_output_frequencies(*g, 12);
  for (std::uint64_t seed : {1u, 2u}) {
    auto U = random_unknown(g, seed, 0.3, 0.5);
    const auto direct = w_derivative_direct(U, 0.4, xs);
    const auto cubic = cubic_rhs(U, 0.4, xs);
    const auto channels = cubic_rhs_channels(U, 0.4, xs);
    double scale = 0.0, err = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      scale = std::max(scale, std::abs(direct[k]));
      err = std::max(err, std::abs(direct[k] - cubic[k]));
      const cplx sum = channels[k][0] + channels[k][1] + channels[k][2] + channels[k][3];
      CHECK(std::abs(sum - cubic[k]) < 1e-15 * std::max(1.0, std::abs(cubic[k])) + 1e-18);
    }
    CHECK(scale > 0.0);
    CHECK(err < 1e-12 * scale);
  }
}

TEST_CASE("normal form residual decays") {
  // centered difference of W over [t - h, t + h] against the window averaged
  // cubic term; the residual is quartic in the amplitude
  auto g = Grid::make(16, 4 * kPi, 1.0, 1.0);
  const std::vector<Vec2> xs = default_output_frequencies(*g, 6);
  const double tc = 0.5, h = 0.1, dt = 0.01;
  std::vector<double> res;
  for (double A : {0.1, 0.05}) {
    const ComplexUnknown U0 = random_unknown(g, 11, A, 0.5);
    StepperConfig c;
    c.dt = dt;
    c.horizon = tc + h;
    std::vector<ComplexUnknown> keep;
    run(U0, c, {[&](const Snapshot& s) {
          if (s.step == 40 || s.step == 50 || s.step == 60) keep.push_back(s.U);
        }});
    REQUIRE(keep.size() == 3);
    const auto wm = w_profile(keep[0], tc - h, xs), wp = w_profile(keep[2], tc + h, xs);
    const auto cu = cubic_rhs(keep[1], tc, xs, h);
    double r = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) r = std::max(r, std::abs((wp[k] - wm[k]) / (2 * h) - cu[k]));
    res.push_back(r);
  }
  CHECK(res[1] < res[0] / 11.0);
}
