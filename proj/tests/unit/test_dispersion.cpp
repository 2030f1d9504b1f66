#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <random>

#include "ep2d/dispersion.hpp"

using namespace ep2d;
using namespace testutil;

TEST_CASE("phase functions") {
  CHECK(lambda_eval({0, 0}, 1, 1) == 1.0);
  CHECK(lambda_eval({1, 0}, 1, 1) == doctest::Approx(1.4142135624).epsilon(1e-10));
  CHECK(lambda_eval({1, 1}, 2, 4) == doctest::Approx(2.8284271247).epsilon(1e-10));
  const Dispersion d{1, 1};
  CHECK(phase_bilinear(PairSig::pp, {3, -2}, {0, 0}, d) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(phase_bilinear(PairSig::pm, {1, 0}, {1, 0}, d) == doctest::Approx(2 * std::sqrt(2.0) - 1).epsilon(1e-14));
  CHECK(phase_bilinear(PairSig::mm, {0, 0}, {0, 0}, d) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(phase_trilinear(TripleSig::ppp, {0, 0}, {0, 0}, {0, 0}, d) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(std::abs(phase_trilinear(TripleSig::ppm, {1, 0}, {1, 0}, {0, 0}, d)) < 1e-14);
  CHECK(phase_trilinear(TripleSig::pmm, {0, 0}, {0.4, 0.3}, {0.4, 0.3}, d) == doctest::Approx(2.0).epsilon(1e-14));
  const Dispersion d4{2, 4};
  CHECK(phase_bilinear(PairSig::pp, {1, 1}, {0, 0}, d4) == doctest::Approx(-2.0).epsilon(1e-14));
  // gradient by central differences
  const Vec2 x{0.7, -1.3};
  const double hstep = 1e-6;
  const Vec2 gnum{(d4(x + Vec2{hstep, 0}) - d4(x - Vec2{hstep, 0})) / (2 * hstep),
                  (d4(x + Vec2{0, hstep}) - d4(x - Vec2{0, hstep})) / (2 * hstep)};
  CHECK(norm(gnum - d4.gradient(x)) < 1e-8);
}

TEST_CASE("linear propagator is exact") {
  auto g = Grid::make(32, 15.0, 1.0, 4.0);
  auto f = to_frequency(random_real(g, 21));
  CHECK(max_abs_diff(propagate_linear(f, 0.0), f) == 0.0);
  auto there = propagate_linear(f, 3.7);
  CHECK(max_abs_diff(propagate_linear(there, -3.7), f) < 1e-12 * max_abs(f));
  CHECK(max_abs_diff(propagate_linear(there, 3.7, Sign::minus), f) < 1e-12 * max_abs(f));
  CHECK(l2_norm(there) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  // group property
  auto two = propagate_linear(propagate_linear(f, 1.2), 2.5);
  CHECK(max_abs_diff(two, there) < 1e-12 * max_abs(f));
}

TEST_CASE("pair phase floor example") {
  // 1 / ((2 sqrt2 - sqrt5) * 2)
  const double v = pair_floor_ratio({1, 0}, {1, 0}, {1, 1});
  CHECK(v == doctest::Approx(1.0 / ((2 * std::sqrt(2.0) - std::sqrt(5.0)) * 2)).epsilon(1e-13));
  CHECK(v == doctest::Approx(0.844083).epsilon(1e-6));
  CHECK(sep_lower_ratio({1, 0}, {0, 1}, {1, 1}) == doctest::Approx(std::sqrt(2.0) / 3).epsilon(1e-13));
  CHECK(sep_upper_ratio({1, 0}, {0, 1}, {1, 1}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  // triple floor at the origin: 1 / 2 sqrt(b)
  CHECK(triple_floor_ratio(TripleSig::ppp, {0, 0}, {0, 0}, {0, 0}, {1, 1}) == doctest::Approx(0.5));
}

TEST_CASE("phase certificate regression") {
  const CertificateReport r = certify_phase_bounds(CertifyConfig{});
  REQUIRE(r.results.size() == 5);
  CHECK(r.pass());
  // frozen maxima at the default seed
  const std::map<std::string, double> frozen{{"pair_floor", 1.98553},
                                             {"sep_lower", 1.11801},
                                             {"sep_upper", 0.99999964},
                                             {"phase_grad", 1.41421},
                                             {"triple_floor", 1.83321}};
  for (const auto& res : r.results) {
    INFO(res.name);
    REQUIRE(frozen.count(res.name));
    CHECK(res.max_ratio == doctest::Approx(frozen.at(res.name)).epsilon(2e-5));
    CHECK(res.max_ratio <= res.budget);
    CHECK(res.samples > 0);
    CHECK(res.argmax.size() >= 4);
  }
  const auto j = r.to_json();
  CHECK(j.dump().find("pair_floor") != std::string::npos);
}

TEST_CASE("phase certificate is reproducible and fails on tight budgets") {
  CertifyConfig c;
  c.n_samples = 20000;
  const auto r1 = certify_phase_bounds(c), r2 = certify_phase_bounds(c);
  for (std::size_t i = 0; i < r1.results.size(); ++i)
    CHECK(r1.results[i].max_ratio == r2.results[i].max_ratio);
  PhaseBudgets tight;
  tight.pair_floor = tight.sep_lower = tight.sep_upper = tight.phase_grad = tight.triple_floor = 1e-3;
  CHECK_FALSE(certify_phase_bounds(c, tight).pass());
}

TEST_CASE("sampled ratios stay bounded on random points") {
  // property: random frequencies over many scales keep each ratio under its budget
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(0, kTwoPi), lr(-8, 10);
  auto pt = [&] {
    const double r = std::exp2(lr(rng)), t = ang(rng);
    return Vec2{r * std::cos(t), r * std::sin(t)};
  };
  const PhaseBudgets b = PhaseBudgets::defaults();
  const Dispersion d{1, 1};
  for (int i = 0; i < 5000; ++i) {
    const Vec2 x = pt(), y = pt(), z = pt();
    CHECK(pair_floor_ratio(x, y, d) <= b.pair_floor);
    CHECK(sep_upper_ratio(x, y, d) <= b.sep_upper);
    for (PairSig s : kPairs) CHECK(phase_grad_ratio(s, x, y, d) <= b.phase_grad);
    for (TripleSig s : {TripleSig::ppp, TripleSig::pmm, TripleSig::mmm})
      CHECK(triple_floor_ratio(s, x, y, z, d) <= b.triple_floor);
  }
}
