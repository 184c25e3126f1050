#include "quasikit/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace quasikit {

const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::Identity: return "identity";
    case MapKind::TaylorInterior: return "taylor";
    case MapKind::JoukowskiExterior: return "joukowski";
    case MapKind::MoebiusComposite: return "moebius";
    case MapKind::Inverted: return "inverted";
  }
  return "unknown";
}

const char* to_string(Side s) { return s == Side::Interior ? "interior" : "exterior"; }

cplx Moebius::operator()(cplx w) const {
  cplx den = c * w + d;
  if (den == cplx(0.0)) throw Error(ErrorKind::Domain, "Moebius evaluation at its pole");
  return (a * w + b) / den;
}

cplx Moebius::deriv(cplx w) const {
  cplx den = c * w + d;
  if (den == cplx(0.0)) throw Error(ErrorKind::Domain, "Moebius derivative at its pole");
  return det() / (den * den);
}

Moebius operator*(const Moebius& L, const Moebius& R) {
  return {L.a * R.a + L.b * R.c, L.a * R.b + L.b * R.d, L.c * R.a + L.d * R.c, L.c * R.b + L.d * R.d};
}

namespace {
std::string fmt_c(cplx z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}
}  // namespace

UnivalentMap UnivalentMap::identity(Side side) {
  UnivalentMap m;
  m.kind_ = MapKind::Identity;
  m.side_ = side;
  m.certificate_ = "identity";
  return m;
}

UnivalentMap UnivalentMap::taylor(const CVec& a, bool jordan_required) {
  if (a.empty() || a[0] == cplx(0.0))
    throw Error(ErrorKind::Domain, "Taylor map needs a_1 != 0");
  UnivalentMap m;
  m.kind_ = MapKind::TaylorInterior;
  m.side_ = Side::Interior;
  m.jordan_required_ = jordan_required;
  m.coeffs_ = a;
  if (a.size() == 2) {
    double c = std::abs(a[1] / a[0]);
    m.certificate_ = "z + c z^2 is univalent on the disk iff |c| <= 1/2";
    if (jordan_required && c >= 0.5)
      throw Error(ErrorKind::Domain, "quadratic map with |c| >= 1/2 is not a Jordan-domain map");
  } else if (a.size() > 2) {
    m.certificate_ = "grid screen only";
    if (jordan_required) {
      auto rep = univalence_check(m);
      if (!rep.pass) throw Error(ErrorKind::Domain, "Taylor map fails the univalence screen: " + rep.reason);
    }
  } else {
    m.certificate_ = "linear";
  }
  return m;
}

UnivalentMap UnivalentMap::joukowski(cplx t, bool jordan_required) {
  double at = std::abs(t);
  if (at > 1.0) throw Error(ErrorKind::Domain, "Joukowski parameter needs |t| <= 1");
  if (jordan_required && at >= 1.0)
    throw Error(ErrorKind::Domain, "Joukowski |t| = 1 degenerates to a segment");
  UnivalentMap m;
  m.kind_ = MapKind::JoukowskiExterior;
  m.side_ = Side::Exterior;
  m.jordan_required_ = jordan_required;
  m.t_ = t;
  m.certificate_ = "z + t/z is univalent on |z| > 1 for |t| <= 1 (ellipse exterior)";
  return m;
}

UnivalentMap UnivalentMap::inverted(const UnivalentMap& inner) {
  UnivalentMap m;
  m.kind_ = MapKind::Inverted;
  m.side_ = inner.side() == Side::Interior ? Side::Exterior : Side::Interior;
  m.jordan_required_ = inner.jordan_required();
  m.inner_ = std::make_shared<const UnivalentMap>(inner);
  m.certificate_ = "inversion of: " + inner.certificate();
  return m;
}

UnivalentMap moebius_compose(const Moebius& M, const UnivalentMap& f) {
  if (M.det() == cplx(0.0)) throw Error(ErrorKind::Domain, "singular Moebius matrix");
  UnivalentMap m;
  m.kind_ = MapKind::MoebiusComposite;
  m.side_ = f.side();
  m.jordan_required_ = f.jordan_required();
  m.mob_ = M;
  m.inner_ = std::make_shared<const UnivalentMap>(f);
  m.certificate_ = "Moebius image of: " + f.certificate();
  return m;
}

std::string UnivalentMap::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case MapKind::Identity: os << "identity(" << to_string(side_) << ")"; break;
    case MapKind::TaylorInterior:
      os << "taylor(";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << fmt_c(coeffs_[i]);
      os << ")";
      break;
    case MapKind::JoukowskiExterior: os << "joukowski(t=" << fmt_c(t_) << ")"; break;
    case MapKind::MoebiusComposite:
      os << "moebius([" << fmt_c(mob_.a) << "," << fmt_c(mob_.b) << "," << fmt_c(mob_.c) << ","
         << fmt_c(mob_.d) << "]," << inner_->describe() << ")";
      break;
    case MapKind::Inverted: os << "inverted(" << inner_->describe() << ")"; break;
  }
  return os.str();
}

bool UnivalentMap::in_domain(cplx z) const {
  double a = std::abs(z);
  return side_ == Side::Interior ? a < 1.0 : a > 1.0;
}

cplx UnivalentMap::eval(cplx z) const {
  if (!in_domain(z)) throw Error(ErrorKind::Domain, "point outside the map's domain");
  return eval_ext(z);
}

cplx UnivalentMap::deriv(cplx z) const {
  if (!in_domain(z)) throw Error(ErrorKind::Domain, "point outside the map's domain");
  return deriv_ext(z);
}

cplx UnivalentMap::eval_ext(cplx z) const {
  switch (kind_) {
    case MapKind::Identity: return z;
    case MapKind::TaylorInterior: {
      cplx s = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 0;) s = (s + coeffs_[k]) * z;
      return s;
    }
    case MapKind::JoukowskiExterior: return z + t_ / z;
    case MapKind::MoebiusComposite: return mob_(inner_->eval_ext(z));
    case MapKind::Inverted: {
      if (z == cplx(0.0)) {
        if (inner_->side() == Side::Exterior) return 0.0;
        throw Error(ErrorKind::Domain, "inverted interior map evaluated at 0");
      }
      cplx u = inner_->eval_ext(1.0 / z);
      if (u == cplx(0.0)) throw Error(ErrorKind::Domain, "inverted map hits infinity");
      return 1.0 / u;
    }
  }
  return 0.0;
}

cplx UnivalentMap::deriv_ext(cplx z) const {
  switch (kind_) {
    case MapKind::Identity: return 1.0;
    case MapKind::TaylorInterior: {
      cplx s = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 0;) s = s * z + static_cast<double>(k + 1) * coeffs_[k];
      return s;
    }
    case MapKind::JoukowskiExterior: return 1.0 - t_ / (z * z);
    case MapKind::MoebiusComposite: return mob_.deriv(inner_->eval_ext(z)) * inner_->deriv_ext(z);
    case MapKind::Inverted: {
      if (z == cplx(0.0)) {
        auto lead = inner_->leading_at_infinity();
        if (!lead) throw Error(ErrorKind::Domain, "inverted map has no finite derivative at 0");
        return 1.0 / *lead;
      }
      cplx zi = 1.0 / z;
      cplx u = inner_->eval_ext(zi);
      return inner_->deriv_ext(zi) / (z * z * u * u);
    }
  }
  return 0.0;
}

std::optional<cplx> UnivalentMap::leading_at_infinity() const {
  if (side_ != Side::Exterior) return std::nullopt;
  switch (kind_) {
    case MapKind::Identity: return cplx(1.0);
    case MapKind::JoukowskiExterior: return cplx(1.0);
    case MapKind::MoebiusComposite: {
      auto li = inner_->leading_at_infinity();
      if (!li || !mob_.affine()) return std::nullopt;
      return mob_.a / mob_.d * *li;
    }
    case MapKind::Inverted: {
      cplx u0 = inner_->eval_ext(0.0);
      if (u0 != cplx(0.0)) return std::nullopt;
      return 1.0 / inner_->deriv_ext(0.0);
    }
    default: return std::nullopt;
  }
}

std::optional<cplx> UnivalentMap::basepoint() const {
  if (side_ == Side::Interior) return eval_ext(0.0);
  switch (kind_) {
    case MapKind::MoebiusComposite: {
      auto pi = inner_->basepoint();
      if (pi) return mob_(*pi);
      if (mob_.affine()) return std::nullopt;
      return mob_.at_infinity();
    }
    case MapKind::Inverted: {
      cplx u0 = inner_->eval_ext(0.0);
      if (u0 == cplx(0.0)) return std::nullopt;
      return 1.0 / u0;
    }
    default: return std::nullopt;
  }
}

cplx invert(const UnivalentMap& f, cplx w, cplx guess, double tol, int max_iter) {
  cplx z = guess;
  double res = std::abs(f.eval_ext(z) - w);
  for (int it = 0; it < max_iter && res >= tol; ++it) {
    cplx fp = f.deriv_ext(z);
    if (fp == cplx(0.0)) break;
    cplx step = (f.eval_ext(z) - w) / fp;
    double lam = 1.0;
    cplx znew = z - step;
    double rnew = std::abs(f.eval_ext(znew) - w);
    for (int h = 0; h < 30 && !(rnew < res); ++h) {
      lam *= 0.5;
      znew = z - lam * step;
      rnew = std::abs(f.eval_ext(znew) - w);
    }
    if (!(rnew < res)) break;
    z = znew;
    res = rnew;
  }
  if (!(res < tol)) {
    std::ostringstream os;
    os << "Newton did not converge, residual " << res;
    throw Error(ErrorKind::Inversion, os.str());
  }
  return z;
}

LevelCurve level_curve(const UnivalentMap& f, double r, std::size_t M, bool allow_continuation) {
  if (!is_pow2(M)) throw Error(ErrorKind::Resolution, "level curve size must be a power of two");
  bool ok = r > 0.0 && (allow_continuation || (f.side() == Side::Interior ? r < 1.0 : r > 1.0));
  if (!ok) throw Error(ErrorKind::Domain, "level-curve radius outside the domain range");
  LevelCurve lc;
  lc.r = r;
  lc.nodes.resize(M);
  lc.tangents.resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    cplx z = r * std::exp(kI * (2.0 * kPi * static_cast<double>(j) / static_cast<double>(M)));
    lc.nodes[j] = f.eval_ext(z);
    lc.tangents[j] = f.deriv_ext(z) * kI * z;
  }
  return lc;
}

UnivalenceReport univalence_check(const UnivalentMap& f, int G, double threshold) {
  const double rmax = 0.95;
  std::vector<cplx> pts, img, der;
  auto push = [&](cplx zeta) {
    cplx z = zeta;
    if (f.side() == Side::Exterior) {
      if (zeta == cplx(0.0)) return;
      z = 1.0 / zeta;
    }
    try {
      cplx v = f.eval(z), d = f.deriv(z);
      if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d))) return;
      pts.push_back(z);
      img.push_back(v);
      der.push_back(d);
    } catch (const Error&) {
      // a Moebius pole inside the domain sends the point to infinity; skip it
    }
  };
  push(0.0);
  for (int i = 1; i <= G; ++i)
    for (int j = 0; j < 2 * G; ++j)
      push(rmax * i / G * std::exp(kI * (kPi * j / G)));

  std::vector<double> mags;
  for (auto d : der) mags.push_back(std::abs(d));
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double scale = mags[mags.size() / 2];

  UnivalenceReport rep;
  double best = std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double q = std::norm(img[i] - img[j]) / std::norm(pts[i] - pts[j]);
      if (q < best) {
        best = q;
        bi = i;
        bj = j;
      }
    }
  rep.min_ratio = std::sqrt(best) / scale;
  rep.witness_z = pts[bi];
  rep.witness_w = pts[bj];
  double dmin = std::numeric_limits<double>::infinity();
  std::size_t di = 0;
  for (std::size_t i = 0; i < der.size(); ++i)
    if (std::abs(der[i]) < dmin) {
      dmin = std::abs(der[i]);
      di = i;
    }
  rep.min_derivative = dmin / scale;
  if (rep.min_ratio <= threshold) {
    rep.pass = false;
    rep.reason = "near-collision of grid images";
  } else if (rep.min_derivative <= threshold) {
    rep.pass = false;
    rep.reason = "derivative nearly vanishes on the grid";
    rep.witness_z = rep.witness_w = pts[di];
  } else {
    rep.pass = true;
    rep.reason = "grid screen passed";
  }
  return rep;
}

ExteriorForm exterior_form(const UnivalentMap& f) {
  ExteriorForm ef;
  if (f.side() == Side::Interior) {
    cplx p = f.eval_ext(0.0), d = f.deriv_ext(0.0);
    UnivalentMap fc = f;
    ef.G = [fc, p, d](cplx w) { return d / (fc.eval_ext(1.0 / w) - p); };
    ef.coord = Moebius{0.0, d, 1.0, -p};
    ef.interior_convention = true;
    return ef;
  }
  if (auto lead = f.leading_at_infinity()) {
    cplx lam = *lead;
    UnivalentMap fc = f;
    ef.G = [fc, lam](cplx w) { return fc.eval_ext(w) / lam; };
    ef.coord = Moebius{1.0 / lam, 0.0, 0.0, 1.0};
    ef.interior_convention = false;
    return ef;
  }
  auto bp = f.basepoint();
  if (!bp) throw Error(ErrorKind::Domain, "exterior map has neither a pole nor a finite value at infinity");
  cplx p = *bp, kappa;
  if (f.kind() == MapKind::MoebiusComposite) {
    const Moebius& M = f.moebius();
    auto li = f.inner()->leading_at_infinity();
    if (!li) throw Error(ErrorKind::Domain, "unsupported exterior composite");
    kappa = -M.det() / (M.c * M.c * *li);
  } else if (f.kind() == MapKind::Inverted) {
    cplx u0 = f.inner()->eval_ext(0.0);
    kappa = -f.inner()->deriv_ext(0.0) / (u0 * u0);
  } else {
    throw Error(ErrorKind::Domain, "unsupported exterior map form");
  }
  UnivalentMap fc = f;
  ef.G = [fc, p, kappa](cplx w) { return kappa / (fc.eval_ext(w) - p); };
  ef.coord = Moebius{0.0, kappa, 1.0, -p};
  ef.interior_convention = true;
  return ef;
}

UnivalentMap interior_form(const UnivalentMap& f) {
  if (f.side() == Side::Interior) return f;
  return UnivalentMap::inverted(f);
}

}  // namespace quasikit
