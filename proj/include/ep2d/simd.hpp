#pragma once

#include <cstddef>

#include "ep2d/common.hpp"

namespace ep2d::simd {

// Flat kernels over interleaved complex arrays. The scalar table is the
// reference; the AVX2 table must agree with it to rounding.
struct KernelTable {
  const char* name;
  void (*scale)(cplx* x, double s, std::size_t n);
  void (*mul_real)(cplx* x, const double* m, std::size_t n);
  void (*mul_complex)(cplx* x, const cplx* m, std::size_t n);
  // y += alpha * x
  void (*axpy)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
  // sum_i w[i] |x[i]|^2 (w == nullptr means w = 1)
  double (*weighted_norm_sq)(const cplx* x, const double* w, std::size_t n);
  // max_i |Re x[i]|
  double (*max_abs_real)(const cplx* x, std::size_t n);
  // c1 = A + iB1, c2 = B2 + i*0 (physical values)
  // p = A*B1 + i A*B2, s = B1^2 + B2^2
  void (*quadratic_products)(const cplx* c1, const cplx* c2, cplx* p, cplx* s,
                             std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();
// Runtime choice. EP2D_SIMD=scalar forces the reference table.
const KernelTable& kernels();

}  // namespace ep2d::simd
