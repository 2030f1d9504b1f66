#include "ep2d/symbols.hpp"

#include <cmath>

namespace ep2d {

cplx bilinear_symbol_eval(PairSig sig, Vec2 xi, Vec2 eta, const Dispersion& d, cplx c0) {
  const Vec2 dif = xi - eta;
  const double nx = std::sqrt(dot(xi, xi));
  const double ne = std::sqrt(dot(eta, eta));
  const double nd = std::sqrt(dot(dif, dif));
  if (nx == 0.0 || ne == 0.0 || nd == 0.0) return 0.0;
  const double lx = d(xi);
  const double xe = dot(xi, eta);
  const double ed = dot(eta, dif);
  double bracket = 0.0;
  switch (sig) {
    case PairSig::pp:
      bracket = -lx * nd * xe / (4.0 * d(dif) * nx * ne) - nx * ed / (8.0 * ne * nd);
      break;
    case PairSig::pm:
      bracket = -lx * ne * dot(xi, dif) / (4.0 * d(eta) * nx * nd) +
                lx * nd * xe / (4.0 * d(dif) * nx * ne) + nx * ed / (4.0 * ne * nd);
      break;
    case PairSig::mm:
      bracket = lx * nd * xe / (4.0 * d(dif) * nx * ne) - nx * ed / (8.0 * ne * nd);
      break;
  }
  return c0 * cplx(0.0, bracket);
}

BilinearSymbol flip_symbol(const BilinearSymbol& m) {
  return BilinearSymbol(m.base(), m.dispersion(), m.c0(), !m.flipped());
}

namespace {

struct Ctx {
  const Dispersion& d;
  cplx c0;
  bool* singular;

  cplx m(PairSig s, Vec2 x, Vec2 y) const { return bilinear_symbol_eval(s, x, y, d, c0); }
  // primed family named by its own signature
  cplx mp_mm(Vec2 v, Vec2 w) const { return std::conj(m(PairSig::pp, -v, -w)); }
  cplx mp_mp(Vec2 v, Vec2 w) const { return std::conj(m(PairSig::pm, -v, -w)); }
  cplx mp_pp(Vec2 v, Vec2 w) const { return std::conj(m(PairSig::mm, -v, -w)); }
  double phi(PairSig s, Vec2 x, Vec2 y) const { return phase_bilinear(s, x, y, d); }

  CubicAddend term(cplx num, double den, Vec2 inter) const {
    if (den == 0.0 || !std::isfinite(den)) {
      *singular = true;
      return {0.0, inter};
    }
    return {num / den, inter};
  }
};

}  // namespace

int cubic_addends(TripleSig sig, Vec2 xi, Vec2 eta, Vec2 chi, const Dispersion& d, cplx c0,
                  CubicAddend* out, bool* singular) {
  bool dummy = false;
  Ctx c{d, c0, singular ? singular : &dummy};
  const PairSig pp = PairSig::pp, pm = PairSig::pm, mm = PairSig::mm;
  const Vec2 x_c = xi - chi, x_e = xi - eta, e_c = eta - chi;
  switch (sig) {
    case TripleSig::ppp:
      out[0] = c.term(c.m(pp, xi, chi) * c.m(pp, x_c, e_c), c.phi(pp, xi, chi), x_c);
      out[1] = c.term(c.m(pp, xi, eta) * c.m(pp, eta, chi), c.phi(pp, xi, eta), eta);
      out[2] = c.term(c.m(pm, xi, eta) * c.mp_pp(eta, chi), c.phi(pm, xi, eta), eta);
      return 3;
    case TripleSig::ppm:
      out[0] = c.term(c.m(pp, xi, x_e) * c.m(pm, eta, chi), c.phi(pp, xi, x_e), eta);
      out[1] = c.term(c.m(pp, xi, eta) * c.m(pm, eta, chi), c.phi(pp, xi, eta), eta);
      out[2] = c.term(c.m(pm, xi, chi) * c.m(pp, x_c, e_c), c.phi(pm, xi, chi), x_c);
      out[3] = c.term(c.m(pm, xi, eta) * c.mp_mp(eta, e_c), c.phi(pm, xi, eta), eta);
      out[4] = c.term(c.m(mm, xi, chi) * c.mp_pp(x_c, x_e), c.phi(mm, xi, chi), x_c);
      out[5] = c.term(c.m(mm, xi, x_c) * c.mp_pp(x_c, x_e), c.phi(mm, xi, x_c), x_c);
      return 6;
    case TripleSig::pmm:
      out[0] = c.term(c.m(pp, xi, x_e) * c.m(mm, eta, chi), c.phi(pp, xi, x_e), eta);
      out[1] = c.term(c.m(pp, xi, eta) * c.m(mm, eta, chi), c.phi(pp, xi, eta), eta);
      out[2] = c.term(c.m(pm, xi, chi) * c.m(pm, x_c, e_c), c.phi(pm, xi, chi), x_c);
      out[3] = c.term(c.m(pm, xi, eta) * c.mp_mm(eta, e_c), c.phi(pm, xi, eta), eta);
      out[4] = c.term(c.m(mm, xi, chi) * c.mp_mp(x_c, x_e), c.phi(mm, xi, chi), x_c);
      out[5] = c.term(c.m(mm, xi, x_c) * c.mp_mp(x_c, x_e), c.phi(mm, xi, x_c), x_c);
      return 6;
    case TripleSig::mmm:
      out[0] = c.term(c.m(pm, xi, chi) * c.m(mm, x_c, e_c), c.phi(pm, xi, chi), x_c);
      out[1] = c.term(c.m(mm, xi, chi) * c.mp_mm(x_c, e_c), c.phi(mm, xi, chi), x_c);
      out[2] = c.term(c.m(mm, xi, eta) * c.mp_mm(eta, chi), c.phi(mm, xi, eta), eta);
      return 3;
  }
  return 0;
}

CubicValue cubic_symbol_eval(TripleSig sig, Vec2 xi, Vec2 eta, Vec2 chi, const Dispersion& d,
                             cplx c0) {
  CubicAddend terms[6];
  CubicValue v{0.0, false};
  const int n = cubic_addends(sig, xi, eta, chi, d, c0, terms, &v.singular);
  for (int i = 0; i < n; ++i) v.value += terms[i].value;
  return v;
}

}  // namespace ep2d
