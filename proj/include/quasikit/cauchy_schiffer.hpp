#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "quasikit/extrapolation.hpp"
#include "quasikit/faber_grunsky.hpp"
#include "quasikit/maps.hpp"
#include "quasikit/series.hpp"

namespace quasikit {

struct JResult {
  CVec values;         // one per data function
  double error = 0.0;  // extrapolation estimate, max over data
  std::size_t max_nodes = 0;
  bool perturbed = false;
};

// Limiting Cauchy integral (1/2 pi i) lim int_{f(|zeta| = r)} h (1/(w-z) - 1/(w-q)) dw of data
// given in disk coordinates, for several data functions at once. Level curves approach the unit
// circle from inside (r = 1 - delta) or, with outer = true, from outside (r = 1 + delta) with the
// data reflected as h(1/conj(zeta)). Quadrature sizes adapt per level and are cached.
class CauchyOperator {
public:
  CauchyOperator(const UnivalentMap& f, std::vector<HarmonicDiskFunction> data, std::optional<cplx> q = std::nullopt,
                 ExtrapolationSchedule sched = ExtrapolationSchedule::standard(), bool outer = false);

  JResult eval(cplx z) const;
  cplx operator()(cplx z) const { return eval(z).values.at(0); }
  std::size_t size() const { return data_.size(); }
  const UnivalentMap& map() const { return f_; }

private:
  struct Block {
    CVec w;
    std::vector<CVec> a;  // data * zeta f'(zeta), per data function
  };
  const Block& block(const ExtrapolationSchedule& s, int variant, std::size_t level, std::size_t M) const;
  JResult run(const ExtrapolationSchedule& s, int variant, cplx z, bool& collided) const;

  UnivalentMap f_;
  std::vector<HarmonicDiskFunction> data_;
  std::optional<cplx> q_;
  ExtrapolationSchedule sched_;
  bool outer_;
  mutable std::map<std::tuple<int, std::size_t, std::size_t>, std::unique_ptr<Block>> cache_;
};

cplx cauchy_J(const UnivalentMap& f, const HarmonicDiskFunction& h, std::optional<cplx> q, cplx z,
              const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

struct JumpPair {
  LaurentSeries h1;   // Taylor coefficients in the disk coordinate of the interior map
  CVec h2_faber;      // h2 = sum_n h2_n (Phi_n - Phi_n(infinity)) + h2_const
  cplx h2_const{0.0};
  std::optional<cplx> q;
  std::string side_of_q;
  double residual = 0.0;
  double j_error = 0.0;
  std::string to_json() const;
};

// u = u1 - u2 on the boundary; h1 read on |xi| = rho_read, h2 by the Faber inverse on the collar.
JumpPair jump_decompose(const UnivalentMap& f, const FourierBoundaryData& u, std::optional<cplx> q = std::nullopt,
                        const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard(), double tol = 1e-5);

// Density a(zeta) = sum_k alpha_k conj(zeta)^k of a one-form a dzbar pulled back to the disk.
// (1/pi) area integral of a f'(zeta) / (f(zeta) - z)^2 for z outside the closed image.
cplx schiffer_T12(const UnivalentMap& f, const CVec& alpha, cplx z, int gl = 64, int nt = 256,
                  bool self_check = true, double* check_diff = nullptr);
// Coefficient of dz at z = f(xi) in the interior, through the smooth kernel K0.
cplx schiffer_T11(const UnivalentMap& f, const CVec& alpha, cplx z, int gl = 64, int nt = 256,
                  bool self_check = true, double* check_diff = nullptr);
cplx schiffer_T11_at(const UnivalentMap& f, const CVec& alpha, cplx xi, int gl = 64, int nt = 256,
                     bool self_check = true, double* check_diff = nullptr);

// Preimage of w under an interior map.
cplx preimage(const UnivalentMap& f, cplx w);
bool in_image(const UnivalentMap& f, cplx w);

struct ResidualRow {
  std::string test;
  cplx point;
  double residual = 0.0;
};

struct VerifyReport {
  double max_residual = 0.0;
  std::vector<ResidualRow> rows;
};

void write_rows_csv(std::ostream& os, const std::vector<ResidualRow>& rows);

// Checks dJ = T12 dbar h on exterior points, dJ = dh + T11 dbar h on interior points and
// dbar J = 0 on both, with central differences of step h_fd. hbar: coefficients of conj(zeta)^k,
// k = 1..m.
VerifyReport verify_wirtinger_identities(const UnivalentMap& f, const CVec& hbar, const CVec& interior_pts,
                                         const CVec& exterior_pts, double h_fd = 1e-4,
                                         const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

// lim int_{f(|zeta| = r)} alpha(w) h(zeta) dw, r -> 1 from inside.
Extrapolated anchor_limit(const UnivalentMap& f, const std::function<cplx(cplx)>& h_collar,
                          const std::function<cplx(cplx)>& alpha,
                          const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

// Harmonic extension to the disk of the boundary trace of a collar function.
HarmonicDiskFunction bounce(const std::function<cplx(cplx)>& h_collar, int N,
                            const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

// Residuals of [J^{M(q)}_{M o f} h](M z) = J^q_f h (z) and of the pulled-back T12 identity.
VerifyReport mobius_invariance_suite(const UnivalentMap& f, const Moebius& M,
                                     const std::vector<HarmonicDiskFunction>& inputs, const CVec& points,
                                     std::optional<cplx> q = std::nullopt,
                                     const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

// Limits from both sides at exterior points: data on the inner levels against its reflection
// on the outer levels.
VerifyReport two_sided_limit_check(const UnivalentMap& f, const HarmonicDiskFunction& h, const CVec& points,
                                   const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

// h(xi) against J11 h(f(xi)) - (O21 J12 h)(xi) at interior disk points.
VerifyReport transmitted_jump_check(const UnivalentMap& f, const HarmonicDiskFunction& h, const CVec& xis,
                                    const ExtrapolationSchedule& sched = ExtrapolationSchedule::standard());

// Grunsky coefficients through the operators: the holomorphic part, vanishing at 0, of the
// transmitted -J^q_{12}(conj(zeta)^n). Needs an interior map.
GrunskyMatrix operator_grunsky(const UnivalentMap& f, int N, std::optional<cplx> q = std::nullopt,
                               const ExtrapolationSchedule& sched = ExtrapolationSchedule::deep());

}  // namespace quasikit
