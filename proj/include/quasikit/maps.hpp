#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "quasikit/common.hpp"

namespace quasikit {

enum class MapKind { Identity, TaylorInterior, JoukowskiExterior, MoebiusComposite, Inverted };
enum class Side { Interior, Exterior };

const char* to_string(MapKind k);
const char* to_string(Side s);

// w -> (a w + b) / (c w + d)
struct Moebius {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Moebius identity() { return {}; }
  static Moebius scaling(cplx s) { return {s, 0.0, 0.0, 1.0}; }
  static Moebius rotation(double alpha) { return scaling(std::exp(kI * alpha)); }

  cplx det() const { return a * d - b * c; }
  bool affine() const { return c == cplx(0.0); }
  cplx operator()(cplx w) const;
  cplx deriv(cplx w) const;
  // Value at infinity when c != 0.
  cplx at_infinity() const { return a / c; }
  Moebius inverse() const { return {d, -b, -c, a}; }
};

// (this o other)
Moebius operator*(const Moebius& lhs, const Moebius& rhs);

// Immutable univalent map of the unit disk (interior) or its exterior.
class UnivalentMap {
public:
  static UnivalentMap identity(Side side = Side::Interior);
  // f(z) = a_1 z + ... + a_K z^K
  static UnivalentMap taylor(const CVec& a, bool jordan_required = true);
  // g(z) = z + t / z on |z| > 1
  static UnivalentMap joukowski(cplx t, bool jordan_required = true);
  // z -> 1 / inner(1 / z), swapping sides
  static UnivalentMap inverted(const UnivalentMap& inner);

  MapKind kind() const { return kind_; }
  Side side() const { return side_; }
  bool jordan_required() const { return jordan_required_; }
  const CVec& taylor_coeffs() const { return coeffs_; }
  cplx t() const { return t_; }
  const Moebius& moebius() const { return mob_; }
  const UnivalentMap* inner() const { return inner_.get(); }
  const std::string& certificate() const { return certificate_; }
  std::string describe() const;

  bool in_domain(cplx z) const;
  // Domain-checked evaluation.
  cplx eval(cplx z) const;
  cplx deriv(cplx z) const;
  // Analytic continuation without the domain check (used for level curves near the boundary).
  cplx eval_ext(cplx z) const;
  cplx deriv_ext(cplx z) const;

  // Interior maps: f(0). Exterior maps: value at infinity when finite.
  std::optional<cplx> basepoint() const;
  // Exterior maps with a simple pole at infinity: lim f(z)/z.
  std::optional<cplx> leading_at_infinity() const;

  friend UnivalentMap moebius_compose(const Moebius& M, const UnivalentMap& f);

private:
  MapKind kind_ = MapKind::Identity;
  Side side_ = Side::Interior;
  bool jordan_required_ = true;
  CVec coeffs_;
  cplx t_{0.0};
  Moebius mob_;
  std::shared_ptr<const UnivalentMap> inner_;
  std::string certificate_;
};

UnivalentMap moebius_compose(const Moebius& M, const UnivalentMap& f);

// Newton inversion with step damping; |eval(z) - w| < tol on success.
cplx invert(const UnivalentMap& f, cplx w, cplx guess, double tol = 1e-12, int max_iter = 50);

struct LevelCurve {
  double r = 0.0;
  CVec nodes;
  CVec tangents;  // f'(r e^{i theta}) i r e^{i theta}
};

// allow_continuation admits radii on the far side of the unit circle.
LevelCurve level_curve(const UnivalentMap& f, double r, std::size_t M, bool allow_continuation = false);

struct UnivalenceReport {
  bool pass = false;
  double min_ratio = 0.0;      // min |f(z)-f(w)| / |z-w|, scaled by the reference derivative
  double min_derivative = 0.0; // min |f'|, same scaling
  cplx witness_z{0.0}, witness_w{0.0};
  std::string reason;
};

// Grid screen on radii up to 0.95 (interior) or from 1/0.95 (exterior); G radial by 2G angular.
UnivalenceReport univalence_check(const UnivalentMap& f, int G = 48, double threshold = 1e-2);

// Form of a map used for Faber and Grunsky computations: G(w) = w + b_0 + b_1/w + ... on |w| > 1,
// together with the Moebius coordinate taking the original target plane to the G-plane.
struct ExteriorForm {
  std::function<cplx(cplx)> G;
  Moebius coord;
  // True when the Faber target is the unbounded complement of an interior map's image, so Faber
  // functions are normalized to vanish at infinity.
  bool interior_convention = false;
};

ExteriorForm exterior_form(const UnivalentMap& f);

// Interior map whose image is bounded by the same curve family: f itself for interior maps and
// z -> 1/g(1/z) for exterior maps.
UnivalentMap interior_form(const UnivalentMap& f);

}  // namespace quasikit
