#include "ep2d/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

namespace ep2d {
namespace {

// planner calls are not thread safe in FFTW
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan make_plan(int n, int sign, bool inplace) {
  std::vector<cplx> a(static_cast<std::size_t>(n) * n), b(inplace ? 0 : a.size());
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = inplace ? pa : reinterpret_cast<fftw_complex*>(b.data());
  return fftw_plan_dft_2d(n, n, pa, pb, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

}  // namespace

FftEngine::FftEngine(int n) : n_(n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = make_plan(n, FFTW_FORWARD, false);
  plan_bwd_ = make_plan(n, FFTW_BACKWARD, false);
  plan_fwd_inplace_ = make_plan(n, FFTW_FORWARD, true);
  plan_bwd_inplace_ = make_plan(n, FFTW_BACKWARD, true);
}

FftEngine::~FftEngine() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  for (void* p : {plan_fwd_, plan_bwd_, plan_fwd_inplace_, plan_bwd_inplace_})
    if (p) fftw_destroy_plan(static_cast<fftw_plan>(p));
}

void FftEngine::forward(const cplx* in, cplx* out) const {
  auto* i = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in));
  auto* o = reinterpret_cast<fftw_complex*>(out);
  fftw_execute_dft(static_cast<fftw_plan>(in == out ? plan_fwd_inplace_ : plan_fwd_), i, o);
}

void FftEngine::backward(const cplx* in, cplx* out) const {
  auto* i = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in));
  auto* o = reinterpret_cast<fftw_complex*>(out);
  fftw_execute_dft(static_cast<fftw_plan>(in == out ? plan_bwd_inplace_ : plan_bwd_), i, o);
}

}  // namespace ep2d
