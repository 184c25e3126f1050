#include "quasikit/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>

namespace quasikit::fft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

CVec run(const CVec& in, int sign) {
  const std::size_t M = in.size();
  if (!is_pow2(M)) throw Error(ErrorKind::Resolution, "FFT length must be a power of two");
  CVec out(M);
  auto* pin = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(M), pin, pout, sign,
                            FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
  }
  fftw_execute_dft(plan, pin, pout);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

CVec forward(const CVec& in) { return run(in, FFTW_FORWARD); }
CVec backward(const CVec& in) { return run(in, FFTW_BACKWARD); }

CVec coefficients(const CVec& samples, int K, double radius) {
  const std::size_t M = samples.size();
  if (M < static_cast<std::size_t>(2 * K + 1))
    throw Error(ErrorKind::Resolution, "grid too small for requested coefficient range");
  CVec F = forward(samples);
  CVec c(2 * K + 1);
  for (int n = -K; n <= K; ++n) {
    std::size_t idx = n >= 0 ? static_cast<std::size_t>(n) : M - static_cast<std::size_t>(-n);
    c[n + K] = F[idx] / static_cast<double>(M) * std::pow(radius, -n);
  }
  return c;
}

CVec synthesize(const CVec& coeffs, int K, std::size_t M, double radius) {
  if (M < static_cast<std::size_t>(2 * K + 1))
    throw Error(ErrorKind::Resolution, "grid too small for coefficient range");
  CVec F(M, cplx(0.0));
  for (int n = -K; n <= K; ++n) {
    std::size_t idx = n >= 0 ? static_cast<std::size_t>(n) : M - static_cast<std::size_t>(-n);
    F[idx] += coeffs[n + K] * std::pow(radius, n);
  }
  return backward(F);
}

}  // namespace quasikit::fft
