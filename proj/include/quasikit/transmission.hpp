#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "quasikit/extrapolation.hpp"
#include "quasikit/maps.hpp"
#include "quasikit/series.hpp"

namespace quasikit {

// Orientation-preserving circle homeomorphism e^{i theta} -> e^{i psi(theta)} given by its lift,
// psi(theta + 2 pi) = psi(theta) + 2 pi.
class CircleHomeo {
public:
  enum class Tag { None, Identity, Rotation, Sine, Automorphism };

  static CircleHomeo identity();
  static CircleHomeo rotation(double alpha);
  // psi = theta + a sin theta, |a| < 1
  static CircleHomeo sine(double a);
  // e^{i rot} (z - a) / (1 - conj(a) z), |a| < 1
  static CircleHomeo automorphism(cplx a, double rot = 0.0);
  // psi_j at theta_j = 2 pi j / M, strictly increasing with psi_{M} = psi_0 + 2 pi implied;
  // monotone cubic (Fritsch-Carlson) interpolation in between.
  static CircleHomeo from_samples(const std::vector<double>& psi);

  Tag tag() const { return tag_; }
  double operator()(double theta) const;
  cplx point(double theta) const { return std::exp(kI * (*this)(theta)); }
  // Exact for tagged maps, otherwise resampled on M points by bisection.
  CircleHomeo inverse(std::size_t M = 1024) const;
  std::string to_json(std::size_t M = 256) const;

private:
  Tag tag_ = Tag::Identity;
  double a_ = 0.0;
  cplx aut_{0.0};
  double rot_ = 0.0;
  std::vector<double> psi_, slope_;
};

// u o phi resampled on M points; output order n_out (default M/4). spillover receives the energy
// sum |n| |c_n|^2 of discarded modes; more than 10% of the input energy is an undersampling error.
FourierBoundaryData compose_boundary(const FourierBoundaryData& u, const CircleHomeo& phi, std::size_t M,
                                     double* spillover = nullptr, int n_out = 0);

// Empirical supremum of the symmetric arc ratio over a G x G grid of (alpha, beta).
double qs_modulus(const CircleHomeo& phi, int G = 64);

struct EnergyRatioReport {
  double C_hat = 0.0;
  double eig_check = 0.0;  // from the dense eigensolver
  double min_eig = 0.0;
  int iterations = 0;
};

// sqrt of the largest generalized eigenvalue of D(e(u o phi)) against D(e(u)) on
// span{e^{i n theta}: 1 <= |n| <= N}.
EnergyRatioReport energy_ratio_report(const CircleHomeo& phi, int N, std::size_t M = 0);
double energy_ratio_norm(const CircleHomeo& phi, int N, std::size_t M = 0);

struct TransmitResult {
  HarmonicDiskFunction h;    // in the interior map's disk coordinate
  FourierBoundaryData trace;
  double error = 0.0;        // boundary extrapolation estimate
  double output_energy = 0.0;
  double collar_energy = 0.0;  // input energy on the collar 1 < |zeta| < 1 + delta_0
};

// Harmonic function on the interior side with the boundary values of h, taken as limits from the
// exterior side along the level curves f(|zeta| = 1 + delta).
TransmitResult transmit(const UnivalentMap& f, const std::function<cplx(cplx)>& h, int N,
                        const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

struct CollarTransmit {
  std::vector<FourierBoundaryData> traces;
  double error = 0.0;  // max coefficient difference between the collar circles
};

// Transmission of functions holomorphic on the exterior collar of f: Laurent coefficients of
// H o f read on each circle 1 + delta (radius-scaled), so the boundary trace needs no pointwise
// extrapolation. H returns one value per data function.
CollarTransmit transmit_holomorphic(const UnivalentMap& f, const std::function<CVec(cplx)>& H, std::size_t ndata,
                                    int N, const ExtrapolationSchedule& sched = ExtrapolationSchedule::collar(),
                                    std::size_t M = 256);

// phi = g^{-1} o f on the circle for an interior/exterior pair with a common boundary curve.
CircleHomeo welding_phi(const UnivalentMap& f, const UnivalentMap& g, std::size_t M = 256);

void write_norm_csv(std::ostream& os, const std::vector<std::pair<int, double>>& rows);

}  // namespace quasikit
