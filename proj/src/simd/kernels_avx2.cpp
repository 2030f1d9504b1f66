// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// cpuid check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "ep2d/simd.hpp"

namespace ep2d::simd {
namespace {

void scale(cplx* x, double s, std::size_t n) {
  double* d = reinterpret_cast<double*>(x);
  const std::size_t m = 2 * n;
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) _mm256_storeu_pd(d + i, _mm256_mul_pd(_mm256_loadu_pd(d + i), vs));
  for (; i < m; ++i) d[i] *= s;
}

void mul_real(cplx* x, const double* w, std::size_t n) {
  double* d = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // [w0 w0 w1 w1]
    const __m128d w2 = _mm_loadu_pd(w + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0x50);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * i), ww));
  }
  for (; i < n; ++i) {
    d[2 * i] *= w[i];
    d[2 * i + 1] *= w[i];
  }
}

inline __m256d cmul(__m256d x, __m256d m) {
  const __m256d mr = _mm256_movedup_pd(m);         // [mr0 mr0 mr1 mr1]
  const __m256d mi = _mm256_permute_pd(m, 0xF);    // [mi0 mi0 mi1 mi1]
  const __m256d xs = _mm256_permute_pd(x, 0x5);    // [xi0 xr0 xi1 xr1]
  return _mm256_fmaddsub_pd(x, mr, _mm256_mul_pd(xs, mi));
}

void mul_complex(cplx* x, const cplx* m, std::size_t n) {
  double* d = reinterpret_cast<double*>(x);
  const double* e = reinterpret_cast<const double*>(m);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(d + 2 * i);
    const __m256d vm = _mm256_loadu_pd(e + 2 * i);
    _mm256_storeu_pd(d + 2 * i, cmul(vx, vm));
  }
  for (; i < n; ++i) x[i] *= m[i];
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  double* d = reinterpret_cast<double*>(y);
  const double* e = reinterpret_cast<const double*>(x);
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(e + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_add_pd(_mm256_loadu_pd(d + 2 * i), cmul(vx, va)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double weighted_norm_sq(const cplx* x, const double* w, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(d + 2 * i);
    if (w) {
      const __m128d w2 = _mm_loadu_pd(w + i);
      const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0x50);
      acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), ww, acc);
    } else {
      acc = _mm256_fmadd_pd(v, v, acc);
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double v = std::norm(x[i]);
    s += w ? w[i] * v : v;
  }
  return s;
}

double max_abs_real(const cplx* x, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(x);
  const __m256d sign = _mm256_set1_pd(-0.0);
  // odd lanes are masked out by zeroing the imaginary parts
  const __m256d keep = _mm256_castsi256_pd(_mm256_setr_epi64x(-1, 0, -1, 0));
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_and_pd(_mm256_andnot_pd(sign, _mm256_loadu_pd(d + 2 * i)), keep);
    m = _mm256_max_pd(m, v);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::max(r, std::abs(x[i].real()));
  return r;
}

void quadratic_products(const cplx* c1, const cplx* c2, cplx* p, cplx* s, std::size_t n) {
  const double* u = reinterpret_cast<const double*>(c1);
  const double* v = reinterpret_cast<const double*>(c2);
  double* pd = reinterpret_cast<double*>(p);
  double* sd = reinterpret_cast<double*>(s);
  const __m256d zero_odd = _mm256_castsi256_pd(_mm256_setr_epi64x(-1, 0, -1, 0));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d ab = _mm256_loadu_pd(u + 2 * i);          // [A0 B10 A1 B11]
    const __m256d cc = _mm256_loadu_pd(v + 2 * i);          // [B20 . B21 .]
    const __m256d aa = _mm256_movedup_pd(ab);               // [A0 A0 A1 A1]
    const __m256d b1 = _mm256_permute_pd(ab, 0xF);          // [B10 B10 B11 B11]
    const __m256d b2 = _mm256_movedup_pd(cc);               // [B20 B20 B21 B21]
    const __m256d bb = _mm256_blend_pd(b1, b2, 0xA);        // [B10 B20 B11 B21]
    _mm256_storeu_pd(pd + 2 * i, _mm256_mul_pd(aa, bb));
    const __m256d sq = _mm256_fmadd_pd(b1, b1, _mm256_mul_pd(b2, b2));
    _mm256_storeu_pd(sd + 2 * i, _mm256_and_pd(sq, zero_odd));
  }
  for (; i < n; ++i) {
    const double a = c1[i].real(), b1 = c1[i].imag(), b2 = c2[i].real();
    p[i] = cplx(a * b1, a * b2);
    s[i] = cplx(b1 * b1 + b2 * b2, 0.0);
  }
}

}  // namespace

const KernelTable* avx2_kernels_impl() {
  static const KernelTable table{"avx2", scale, mul_real, mul_complex, axpy,
                                 weighted_norm_sq, max_abs_real, quadratic_products};
  return &table;
}

}  // namespace ep2d::simd
