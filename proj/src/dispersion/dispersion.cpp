#include "ep2d/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ep2d/simd.hpp"

namespace ep2d {

int first(PairSig s) { return s == PairSig::mm ? -1 : 1; }
int second(PairSig s) { return s == PairSig::pp ? 1 : -1; }

const char* name(PairSig s) {
  switch (s) {
    case PairSig::pp: return "++";
    case PairSig::pm: return "+-";
    case PairSig::mm: return "--";
  }
  return "?";
}

const char* name(TripleSig s) {
  switch (s) {
    case TripleSig::ppp: return "+++";
    case TripleSig::ppm: return "++-";
    case TripleSig::pmm: return "+--";
    case TripleSig::mmm: return "---";
  }
  return "?";
}

std::array<int, 3> signs(TripleSig s) {
  switch (s) {
    case TripleSig::ppp: return {1, 1, 1};
    case TripleSig::ppm: return {1, 1, -1};
    case TripleSig::pmm: return {1, -1, -1};
    case TripleSig::mmm: return {-1, -1, -1};
  }
  return {0, 0, 0};
}

double lambda_eval(Vec2 xi, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("a and b must be positive");
  return std::sqrt(a * dot(xi, xi) + b);
}

double phase_bilinear(PairSig sig, Vec2 xi, Vec2 eta, const Dispersion& d) {
  return d(xi) - first(sig) * d(xi - eta) - second(sig) * d(eta);
}

double phase_trilinear(TripleSig sig, Vec2 xi, Vec2 eta, Vec2 chi, const Dispersion& d) {
  const auto s = signs(sig);
  return d(xi) - s[0] * d(xi - eta) - s[1] * d(eta - chi) - s[2] * d(chi);
}

SpectralField propagate_linear(const SpectralField& f, double t, Sign sign) {
  const Grid& g = f.grid();
  SpectralField fh = to_frequency(f);
  std::vector<cplx> factor(g.size());
  const double s = -static_cast<double>(static_cast<int>(sign)) * t;
  for (std::size_t i = 0; i < factor.size(); ++i) factor[i] = std::polar(1.0, s * g.lambda()[i]);
  simd::kernels().mul_complex(fh.mutable_values().data(), factor.data(), fh.size());
  return f.is_frequency() ? fh : to_physical(fh);
}

// ---------------------------------------------------------------------------
// sampled certificates

double pair_floor_ratio(Vec2 x, Vec2 y, const Dispersion& d) {
  const double lx = d(x), ly = d(y), ls = d(x + y);
  const double m = 1.0 + std::min({norm(x), norm(y), norm(x + y)});
  double worst = 0.0;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) worst = std::max(worst, 1.0 / (std::abs(lx + s1 * ly + s2 * ls) * m));
  return worst;
}

double sep_lower_ratio(Vec2 x, Vec2 y, const Dispersion& d) {
  const double nx = norm(x), ny = norm(y);
  const double lhs = norm(x - y) / (1.0 + nx * nx * nx + ny * ny * ny);
  const double rhs = norm(d.gradient(x) - d.gradient(y));
  return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
}

double sep_upper_ratio(Vec2 x, Vec2 y, const Dispersion& d) {
  const double den = norm(x - y);
  return den > 0.0 ? norm(d.gradient(x) - d.gradient(y)) / den : 0.0;
}

double phase_grad_ratio(PairSig sig, Vec2 xi, Vec2 eta, const Dispersion& d) {
  const double mu = first(sig), nu = second(sig);
  const Vec2 gx = d.gradient(xi), gd = d.gradient(xi - eta), ge = d.gradient(eta);
  const Vec2 dxi = gx - mu * gd;
  const Vec2 deta = mu * gd - nu * ge;
  const double lhs = std::sqrt(dot(dxi, dxi) + dot(deta, deta));
  return lhs / std::abs(phase_bilinear(sig, xi, eta, d));
}

double triple_floor_ratio(TripleSig sig, Vec2 xi, Vec2 eta, Vec2 chi, const Dispersion& d) {
  const double m = std::min({norm(xi), norm(xi - eta), norm(eta - chi), norm(chi)});
  return (1.0 / (1.0 + m)) / std::abs(phase_trilinear(sig, xi, eta, chi, d));
}

PhaseBudgets PhaseBudgets::defaults() {
  PhaseBudgets p;
  // sweep maxima at the default seed: 1.98553, 1.11801, 0.99999964, 1.41421, 1.83321
  p.pair_floor = 3.98;
  p.sep_lower = 2.24;
  p.sep_upper = 2.0;
  p.phase_grad = 2.83;
  p.triple_floor = 3.67;
  return p;
}

bool CertificateReport::pass() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

nlohmann::json CertificateReport::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& r : results) {
    out[r.name] = {{"samples", r.samples}, {"max_ratio", r.max_ratio}, {"argmax", r.argmax},
                   {"budget", r.budget},   {"pass", r.pass}};
  }
  out["pass"] = pass();
  return out;
}

namespace {

class Sampler {
 public:
  Sampler(std::uint64_t seed, int lo, int hi) : rng_(seed), lo_(lo), hi_(hi) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  Vec2 generic() {
    const double r = std::exp2(lo_ + (hi_ - lo_) * uniform());
    const double th = kTwoPi * uniform();
    return {r * std::cos(th), r * std::sin(th)};
  }

  // a small relative perturbation of p
  Vec2 near(Vec2 p) {
    const double rel = std::exp2(-20.0 + 19.0 * uniform());
    const Vec2 q = generic();
    const double nq = norm(q);
    const double np = std::max(norm(p), std::exp2(lo_));
    return p + (rel * np / nq) * q;
  }

  Vec2 collinear(Vec2 p) {
    const double r = std::exp2(lo_ + (hi_ - lo_) * uniform());
    const double np = norm(p);
    return (r / np) * p;
  }

  // a pair drawn from one of: generic, one small, nearly equal, collinear
  std::pair<Vec2, Vec2> pair() {
    const Vec2 x = generic();
    switch (static_cast<int>(4.0 * uniform())) {
      case 0: return {x, generic()};
      case 1: return {x, std::exp2(-12.0 * uniform()) * std::exp2(lo_) * unit()};
      case 2: return {x, near(x)};
      default: return {x, collinear(x)};
    }
  }

  Vec2 unit() {
    const double th = kTwoPi * uniform();
    return {std::cos(th), std::sin(th)};
  }

 private:
  std::mt19937_64 rng_;
  int lo_, hi_;
};

struct Tracker {
  InequalityResult r;
  explicit Tracker(std::string n, double budget) {
    r.name = std::move(n);
    r.budget = budget;
  }
  void add(double ratio, std::initializer_list<double> point) {
    ++r.samples;
    if (ratio > r.max_ratio || std::isnan(ratio)) {
      r.max_ratio = std::isnan(ratio) ? INFINITY : ratio;
      r.argmax.assign(point);
    }
  }
  InequalityResult done() {
    r.pass = std::isfinite(r.max_ratio) && r.max_ratio <= r.budget;
    return r;
  }
};

}  // namespace

CertificateReport certify_phase_bounds(const CertifyConfig& cfg, const PhaseBudgets& budgets) {
  if (cfg.n_samples < 1) throw InputError("n_samples must be at least 1");
  const Dispersion d{cfg.a, cfg.b};
  Sampler s(cfg.seed, cfg.log2_r_min, cfg.log2_r_max);
  Tracker pair_floor("pair_floor", budgets.pair_floor), sep_lower("sep_lower", budgets.sep_lower),
      sep_upper("sep_upper", budgets.sep_upper), phase_grad("phase_grad", budgets.phase_grad), triple_floor("triple_floor", budgets.triple_floor);

  for (std::size_t i = 0; i < cfg.n_samples; ++i) {
    auto [x, y] = s.pair();
    pair_floor.add(pair_floor_ratio(x, y, d), {x.x, x.y, y.x, y.y});
    sep_lower.add(sep_lower_ratio(x, y, d), {x.x, x.y, y.x, y.y});
    sep_upper.add(sep_upper_ratio(x, y, d), {x.x, x.y, y.x, y.y});

    // (xi, eta) with eta drawn relative to xi so that near-resonant
    // configurations of every signature are hit
    auto [xi, eta] = s.pair();
    for (PairSig sig : kPairs) phase_grad.add(phase_grad_ratio(sig, xi, eta, d), {xi.x, xi.y, eta.x, eta.y});

    auto [p, q] = s.pair();
    const Vec2 chi = s.uniform() < 0.5 ? s.generic() : s.near(q);
    for (TripleSig sig : {TripleSig::ppp, TripleSig::pmm, TripleSig::mmm})
      triple_floor.add(triple_floor_ratio(sig, p, q, chi, d), {p.x, p.y, q.x, q.y, chi.x, chi.y});
  }

  CertificateReport rep;
  rep.results = {pair_floor.done(), sep_lower.done(), sep_upper.done(), phase_grad.done(), triple_floor.done()};
  return rep;
}

}  // namespace ep2d
