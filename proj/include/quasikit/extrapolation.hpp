#pragma once

#include <Eigen/Dense>

#include "quasikit/common.hpp"

namespace quasikit {

// Offsets delta_k = |1 - r_k| of the level curves used for boundary limits, strictly decreasing.
struct ExtrapolationSchedule {
  std::vector<double> deltas;
  // Polynomial order in delta; at most deltas.size() - 1.
  int order = 0;
  // Acceptance threshold on the extrapolation error estimate, relative to max(1, |value|).
  double tol = 1e-9;

  // delta_k = 0.1 * 2^-k, k = 0..7, full-order extrapolation.
  static ExtrapolationSchedule standard();
  // delta_k = 0.1 * 2^-k, k = 0..11, for data of high polynomial degree.
  static ExtrapolationSchedule deep();
  // Three radii 0.90, 0.95, 0.975 with second-order extrapolation.
  static ExtrapolationSchedule coarse();
  // Two collar offsets 0.1, 0.05 for reads of functions holomorphic across the collar, where the
  // radius-scaled Laurent coefficients do not depend on the radius.
  static ExtrapolationSchedule collar();

  void validate() const;
  std::vector<double> interior_radii() const;
  std::vector<double> exterior_radii() const;
  // Same schedule shifted by a relative factor, used to step away from quadrature nodes.
  ExtrapolationSchedule perturbed(double factor) const;
};

struct Extrapolated {
  cplx value{0.0};
  double error = 0.0;  // |T_K - T_{K-1}| between the last two Neville diagonals
};

// Neville extrapolation of values(delta) to delta = 0 using the last order+1 points.
Extrapolated extrapolate(const std::vector<double>& deltas, const CVec& values, int order);
// Componentwise version; error is the max over components.
struct ExtrapolatedVec {
  CVec value;
  double error = 0.0;
};
ExtrapolatedVec extrapolate(const std::vector<double>& deltas, const std::vector<CVec>& values,
                            int order);

struct PowerResult {
  double value = 0.0;  // largest eigenvalue of the Hermitian PSD operator
  int iterations = 0;
  bool converged = false;
};

// Power iteration for the top eigenvalue of a Hermitian positive semidefinite A, all-ones start,
// stopped when the geometric-tail error estimate drops below rel_tol.
PowerResult power_iteration(const Eigen::MatrixXcd& A, double rel_tol = 1e-12, int max_iter = 200000);

// Largest singular value of B via power iteration on B^* B.
PowerResult top_singular_value(const Eigen::MatrixXcd& B, double rel_tol = 1e-12);

}  // namespace quasikit
