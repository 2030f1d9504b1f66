#include <algorithm>
#include <cmath>

#include "ep2d/simd.hpp"

namespace ep2d::simd {
namespace {

void scale(cplx* x, double s, std::size_t n) {
  double* d = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < 2 * n; ++i) d[i] *= s;
}

void mul_real(cplx* x, const double* m, std::size_t n) {
  double* d = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    d[2 * i] *= m[i];
    d[2 * i + 1] *= m[i];
  }
}

void mul_complex(cplx* x, const cplx* m, std::size_t n) {
  double* d = reinterpret_cast<double*>(x);
  const double* e = reinterpret_cast<const double*>(m);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = d[2 * i], xi = d[2 * i + 1];
    const double mr = e[2 * i], mi = e[2 * i + 1];
    d[2 * i] = xr * mr - xi * mi;
    d[2 * i + 1] = xr * mi + xi * mr;
  }
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  double* d = reinterpret_cast<double*>(y);
  const double* e = reinterpret_cast<const double*>(x);
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = e[2 * i], xi = e[2 * i + 1];
    d[2 * i] += ar * xr - ai * xi;
    d[2 * i + 1] += ar * xi + ai * xr;
  }
}

double weighted_norm_sq(const cplx* x, const double* w, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(x);
  double acc[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
    acc[i & 3] += w ? w[i] * v : v;
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double max_abs_real(const cplx* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i].real()));
  return m;
}

void quadratic_products(const cplx* c1, const cplx* c2, cplx* p, cplx* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = c1[i].real(), b1 = c1[i].imag(), b2 = c2[i].real();
    p[i] = cplx(a * b1, a * b2);
    s[i] = cplx(b1 * b1 + b2 * b2, 0.0);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", scale, mul_real, mul_complex, axpy,
                                 weighted_norm_sq, max_abs_real, quadratic_products};
  return table;
}

}  // namespace ep2d::simd
