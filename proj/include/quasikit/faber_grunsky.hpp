#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "quasikit/extrapolation.hpp"
#include "quasikit/maps.hpp"

namespace quasikit {

// Sampling data shared by the Faber and Grunsky routines: G and G' on |z| = r_s and the
// Laurent coefficients b_k of G(z) = z + b_0 + b_1/z + ...
struct ExteriorSamples {
  ExteriorForm form;
  double r_s = 1.25;
  CVec z, G, dG;
  CVec b;  // b[0..L]
  double alias_error = 0.0;
};

ExteriorSamples exterior_samples(const UnivalentMap& map, std::size_t M, double r_s = 1.25);

// Whether the point at infinity of the original plane lies in the Faber target domain; Faber
// functions are then normalized to vanish there unless another point is given.
bool infinity_in_target(const ExteriorSamples& es);

struct FaberTable {
  int N = 0;
  // polys[n-1] = coefficients p_0..p_n of Phi_n(w) = sum p_j w^j
  std::vector<CVec> polys;
  double condition = 1.0;  // max over n of sum_j |p_j| R^j / r_s^n
  cplx eval(int n, cplx w) const;
  cplx deriv(int n, cplx w) const;
  std::string to_json() const;
};

FaberTable faber_polynomials(const UnivalentMap& map, int N, double r_s = 1.25);

struct GrunskyOptions {
  double r_s = 1.25;
  std::size_t M = 0;  // 0 picks max(256, nextpow2(8 max(N, K)))
  // Normalization point in the original target plane; only the constants of Phi_n depend on it.
  std::optional<cplx> q;
  double alias_tol = 1e-9;
};

struct GrunskyCoefficients {
  int N = 0, K = 0;
  Eigen::MatrixXcd b;  // b(n-1, k-1): coefficient of z^-k in Phi_n(G(z))
  CVec constants;      // constant term of Phi_n(G(z)) after normalization
  ExteriorSamples samples;
  std::vector<CVec> F;  // F[n] = Phi_n(G(z_j)) before normalization, n = 0..N
  double residue_error = 0.0;  // max |coefficient of z^m|, 1 <= m < n
  std::size_t M = 0;
};

GrunskyCoefficients grunsky_coeffs(const UnivalentMap& map, int N, int K = 0,
                                   const GrunskyOptions& opt = {});

// Phi_n(v) for n = 1..N by the Cauchy integral over G(|z| = r_s); v must lie inside that curve.
CVec faber_values(const GrunskyCoefficients& gc, cplx v);

struct GrunskyMatrix {
  int N = 0;
  Eigen::MatrixXcd raw;         // b_{nk}
  Eigen::MatrixXcd normalized;  // beta(n-1, k-1) = sqrt(k/n) b_{nk}
  double symmetry_error = 0.0;  // max |beta_nk - beta_kn| / max(1, |beta|_inf)
  double symmetry_tol = 1e-9;
  double residue_error = 0.0;
  double alias_error = 0.0;
  std::string to_json() const;
};

// Normalizes and measures symmetry without any check.
GrunskyMatrix grunsky_from_raw(const Eigen::MatrixXcd& raw);
// Throws a consistency error when the symmetry defect exceeds max(1e-9, 100 eps r_s^{2N}).
GrunskyMatrix grunsky_matrix(const UnivalentMap& map, int N, const GrunskyOptions& opt = {});

struct NormReport {
  double norm = 0.0;
  std::optional<double> svd_norm;
  int iterations = 0;
  bool converged = false;
};

NormReport grunsky_norm_report(const GrunskyMatrix& G, bool svd_check = true);
double grunsky_norm(const GrunskyMatrix& G);

enum class Verdict { Quasicircle, Indeterminate, NonQuasicircleTrend };
const char* to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Indeterminate;
  int N = 0;
  double delta = 0.02;
  double norm_N = 0.0, norm_half = 0.0;
  bool monotone = true;
  std::vector<std::pair<int, double>> trace;  // truncation order and norm
  std::string to_json() const;
};

Classification classify_quasicircle(const UnivalentMap& map, int N, double delta = 0.02,
                                    const GrunskyOptions& opt = {});

// |x^T beta x| and |x|^2 for x_n = sqrt(n) h_n.
std::pair<double, double> weak_grunsky_form(const GrunskyMatrix& G, const CVec& hbar);

// H = sum h_n (Phi_n - c_n), c_n fixing the normalization point.
class FaberSeries {
public:
  FaberSeries(const UnivalentMap& map, const CVec& hbar, std::optional<cplx> q, int tail);

  const CVec& coefficients() const { return h_; }
  const GrunskyCoefficients& grunsky() const { return gc_; }
  bool interior_convention() const { return gc_.samples.form.interior_convention; }
  // Point of the original plane lies in the Faber target domain.
  bool in_target(cplx w) const;
  cplx operator()(cplx w) const;
  cplx derivative(cplx w) const;
  // Stable evaluation through the Grunsky tail at the parameter s: s = 1/zeta for the interior
  // convention, s = z for the exterior one.
  cplx pulled(cplx s) const;
  cplx pulled_derivative(cplx s) const;

private:
  UnivalentMap map_;
  CVec h_;
  GrunskyCoefficients gc_;
  CVec offsets_;
  CVec S_;  // sum h_n F_n on the sampling circle
  CVec tail_;  // sum_n h_n b_{nk}, zeroed below the sampling noise floor
  CVec boundary_;  // G on the unit circle, for the domain test
};

FaberSeries faber_apply(const UnivalentMap& map, const CVec& hbar, std::optional<cplx> q = std::nullopt,
                        int tail = 0);

struct FaberInverse {
  CVec h;
  double error = 0.0;
};

// Faber coefficients h_1..h_N of H from boundary limits on the target side of the curve.
FaberInverse faber_inverse(const UnivalentMap& map, const std::function<cplx(cplx)>& H, int N,
                           const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

// Dirichlet energy of sum_{n >= from} h_n Phi_n on the Faber target from the coefficients:
// sum n |h_n|^2 - sum_k k |sum_n h_n b_{nk}|^2.
double faber_energy(const GrunskyCoefficients& gc, const CVec& hbar, int from = 1);

struct EnergyCheck {
  double lhs = 0.0, rhs = 0.0, residual = 0.0;
  double lhs_error = 0.0;
};

EnergyCheck energy_identity_check(const UnivalentMap& map, const CVec& hbar,
                                  const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

// f'(w) f'(z) / (f(w) - f(z))^2 - 1/(w - z)^2 for an interior map, Taylor-expanded near w = z.
cplx schiffer_K0(const UnivalentMap& f, cplx w, cplx z);
cplx bergman_schiffer_kernel(const UnivalentMap& f, cplx w, cplx z);

// (1/pi) area integral over the disk of K0(w, z) conj(w)^{n-1}; gl x nt polar quadrature.
cplx kernel_column(const UnivalentMap& f, int n, cplx z, int gl = 64, int nt = 256);
// Same column from the Grunsky coefficients: -sum_m (m/n) b_{nm} z^{m-1}.
cplx kernel_column_from_grunsky(const GrunskyCoefficients& gc, int n, cplx z);

struct CatalogEntry {
  std::string name;
  UnivalentMap map;
};

std::vector<CatalogEntry> catalog();

}  // namespace quasikit
