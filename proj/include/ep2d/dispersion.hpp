#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ep2d/field.hpp"

namespace ep2d {

struct Dispersion {
  double a = 1.0;
  double b = 1.0;
  double operator()(Vec2 xi) const { return std::sqrt(a * dot(xi, xi) + b); }
  Vec2 gradient(Vec2 xi) const { return (a / (*this)(xi)) * xi; }
};

inline Dispersion dispersion_of(const Grid& g) { return {g.a(), g.b()}; }

enum class Sign : int { plus = 1, minus = -1 };

// Only the sign patterns that occur in the quadratic and cubic sums.
enum class PairSig : std::uint8_t { pp, pm, mm };
enum class TripleSig : std::uint8_t { ppp, ppm, pmm, mmm };

int first(PairSig s);
int second(PairSig s);
const char* name(PairSig s);
const char* name(TripleSig s);
std::array<int, 3> signs(TripleSig s);
inline constexpr PairSig kPairs[3] = {PairSig::pp, PairSig::pm, PairSig::mm};
inline constexpr TripleSig kTriples[4] = {TripleSig::ppp, TripleSig::ppm, TripleSig::pmm,
                                          TripleSig::mmm};

double lambda_eval(Vec2 xi, double a, double b);
// Lambda(xi) - mu Lambda(xi - eta) - nu Lambda(eta)
double phase_bilinear(PairSig sig, Vec2 xi, Vec2 eta, const Dispersion& d);
// Lambda(xi) - mu Lambda(xi - eta) - nu Lambda(eta - chi) - sigma Lambda(chi)
double phase_trilinear(TripleSig sig, Vec2 xi, Vec2 eta, Vec2 chi, const Dispersion& d);

// f^ times e^{-it Lambda} (plus) or e^{+it Lambda} (minus)
SpectralField propagate_linear(const SpectralField& f, double t, Sign sign = Sign::plus);

struct CertifyConfig {
  std::uint64_t seed = 20240611;
  std::size_t n_samples = 1000000;
  double a = 1.0;
  double b = 1.0;
  int log2_r_min = -10;
  int log2_r_max = 12;
};

struct InequalityResult {
  std::string name;
  std::size_t samples = 0;
  double max_ratio = 0.0;
  std::vector<double> argmax;  // flattened sample point
  double budget = 0.0;
  bool pass = false;
};

struct CertificateReport {
  std::vector<InequalityResult> results;
  bool pass() const;
  nlohmann::json to_json() const;
};

// Frozen budgets (calibrated maximum times two) for a = b = 1.
struct PhaseBudgets {
  double pair_floor = 0.0;
  double sep_lower = 0.0;
  double sep_upper = 0.0;
  double phase_grad = 0.0;
  double triple_floor = 0.0;
  static PhaseBudgets defaults();
};

// Ratios are LHS/RHS of each inequality, so a bound holds with constant C
// when every ratio is at most C.
double pair_floor_ratio(Vec2 x, Vec2 y, const Dispersion& d);
double sep_lower_ratio(Vec2 x, Vec2 y, const Dispersion& d);
double sep_upper_ratio(Vec2 x, Vec2 y, const Dispersion& d);
double phase_grad_ratio(PairSig sig, Vec2 xi, Vec2 eta, const Dispersion& d);
double triple_floor_ratio(TripleSig sig, Vec2 xi, Vec2 eta, Vec2 chi, const Dispersion& d);

CertificateReport certify_phase_bounds(const CertifyConfig& cfg,
                                       const PhaseBudgets& budgets = PhaseBudgets::defaults());

}  // namespace ep2d
