#pragma once

#include "ep2d/common.hpp"

namespace ep2d {

// Unnormalized 2D complex transforms on an N x N array (FFTW backend).
// Plans use FFTW_ESTIMATE | FFTW_UNALIGNED so results do not depend on
// timing or buffer alignment. Execution is reentrant.
class FftEngine {
 public:
  explicit FftEngine(int n);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  // out[k] = sum_x in[x] e^{-2 pi i k.x / N}; in may equal out
  void forward(const cplx* in, cplx* out) const;
  // out[x] = sum_k in[k] e^{+2 pi i k.x / N}
  void backward(const cplx* in, cplx* out) const;

 private:
  int n_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  void* plan_fwd_inplace_ = nullptr;
  void* plan_bwd_inplace_ = nullptr;
};

}  // namespace ep2d
