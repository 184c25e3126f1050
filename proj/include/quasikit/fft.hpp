#pragma once

#include "quasikit/common.hpp"

namespace quasikit::fft {

// out[k] = sum_j in[j] exp(-2 pi i j k / M). M must be a power of two.
CVec forward(const CVec& in);
// out[j] = sum_k in[k] exp(+2 pi i j k / M), no 1/M factor.
CVec backward(const CVec& in);

// Fourier coefficients c_n, n in [-K, K], of samples v_j = F(theta_j), theta_j = 2 pi j / M,
// divided by radius^n (so that samples of a Laurent series on |z| = radius give its coefficients).
// Requires M >= 2K + 1.
CVec coefficients(const CVec& samples, int K, double radius = 1.0);

// Evaluate sum_{n=-K}^{K} c_n z^n on |z| = radius at M equispaced angles.
CVec synthesize(const CVec& coeffs, int K, std::size_t M, double radius = 1.0);

}  // namespace quasikit::fft
