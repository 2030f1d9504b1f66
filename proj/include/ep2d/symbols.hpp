#pragma once

#include <array>

#include "ep2d/dispersion.hpp"

namespace ep2d {

// Quadratic symbols m_{mu nu}(xi, eta). Zero whenever |xi|, |eta| or
// |xi - eta| vanishes.
cplx bilinear_symbol_eval(PairSig sig, Vec2 xi, Vec2 eta, const Dispersion& d, cplx c0 = kC0);

// m or its conjugate flip m'(v, w) = conj(m(-v, -w)). The flip of m_{++}
// is the (-,-) member of the primed family, and so on.
class BilinearSymbol {
 public:
  BilinearSymbol(PairSig base, Dispersion d, cplx c0 = kC0, bool flipped = false)
      : base_(base), d_(d), c0_(c0), flipped_(flipped) {}

  cplx operator()(Vec2 xi, Vec2 eta) const {
    if (!flipped_) return bilinear_symbol_eval(base_, xi, eta, d_, c0_);
    return std::conj(bilinear_symbol_eval(base_, -xi, -eta, d_, c0_));
  }
  PairSig base() const { return base_; }
  bool flipped() const { return flipped_; }
  cplx c0() const { return c0_; }
  const Dispersion& dispersion() const { return d_; }
  // signs (mu, nu) of the factors this symbol multiplies
  std::array<int, 2> signature() const {
    const int s = flipped_ ? -1 : 1;
    return {s * first(base_), s * second(base_)};
  }

 private:
  PairSig base_;
  Dispersion d_;
  cplx c0_;
  bool flipped_;
};

BilinearSymbol flip_symbol(const BilinearSymbol& m);

struct CubicAddend {
  cplx value;
  Vec2 intermediate;  // frequency at which the inner quadratic factor lives
};

// Addends of m_{mu nu sigma}(xi, eta, chi) in display order. Returns the count
// (3 or 6). An addend whose phase denominator is exactly zero gets value 0
// and sets *singular.
int cubic_addends(TripleSig sig, Vec2 xi, Vec2 eta, Vec2 chi, const Dispersion& d, cplx c0,
                  CubicAddend* out, bool* singular);

struct CubicValue {
  cplx value;
  bool singular = false;
};

CubicValue cubic_symbol_eval(TripleSig sig, Vec2 xi, Vec2 eta, Vec2 chi, const Dispersion& d,
                             cplx c0 = kC0);

}  // namespace ep2d
