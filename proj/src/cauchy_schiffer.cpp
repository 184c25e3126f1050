#include "quasikit/cauchy_schiffer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "quasikit/fft.hpp"
#include "quasikit/transmission.hpp"

namespace quasikit {

namespace {

constexpr std::size_t kStartNodes = 256;
constexpr std::size_t kMaxNodes = std::size_t{1} << 17;
constexpr double kCollision = 1e-6;

double theta_of(std::size_t j, std::size_t M) {
  return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
}

// Winding number of the closed polygon through pts around w.
int winding(const CVec& pts, cplx w) {
  double total = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    cplx a = pts[j] - w, b = pts[(j + 1) % pts.size()] - w;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

CVec image_of_circle(const UnivalentMap& f, double r, std::size_t M) {
  CVec pts(M);
  for (std::size_t j = 0; j < M; ++j) pts[j] = f.eval_ext(r * std::exp(kI * theta_of(j, M)));
  return pts;
}

void require_interior(const UnivalentMap& f, const char* what) {
  if (f.side() != Side::Interior) throw Error(ErrorKind::Domain, std::string(what) + " needs an interior map");
}

// a(zeta) = sum_k alpha_k conj(zeta)^k
cplx density(const CVec& alpha, cplx zeta) {
  cplx zb = std::conj(zeta), s = 0.0;
  for (std::size_t k = alpha.size(); k-- > 0;) s = s * zb + alpha[k];
  return s;
}

// Density of dbar h for antiholomorphic data: alpha_{k-1} = k beta_k.
CVec dbar_density(const HarmonicDiskFunction& h) {
  CVec alpha(static_cast<std::size_t>(std::max(h.N, 1)));
  for (int k = 1; k <= h.N; ++k) alpha[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * h.antiholo[k];
  return alpha;
}

template <class Integrand>
cplx polar_quadrature(int gl, int nt, Integrand&& g) {
  std::vector<double> rx, rw;
  gauss_legendre(gl, 0.0, 1.0, rx, rw);
  const double dth = 2.0 * kPi / nt;
  CVec rows(static_cast<std::size_t>(gl)), ring(static_cast<std::size_t>(nt));
  for (int i = 0; i < gl; ++i) {
    for (int j = 0; j < nt; ++j) ring[static_cast<std::size_t>(j)] = g(rx[i] * std::exp(kI * (dth * j)));
    rows[static_cast<std::size_t>(i)] = pairwise_sum(ring) * (rw[i] * rx[i] * dth);
  }
  return pairwise_sum(rows);
}

template <class Integrand>
cplx checked_area(int gl, int nt, bool self_check, double* check_diff, Integrand&& g) {
  cplx v = polar_quadrature(gl, nt, g);
  if (self_check) {
    cplx v2 = polar_quadrature(2 * gl, 2 * nt, g);
    double d = std::abs(v2 - v);
    if (check_diff) *check_diff = d;
    if (d > 1e-7 * std::max(1.0, std::abs(v2))) {
      std::ostringstream os;
      os << "area quadrature " << gl << "x" << nt << " differs from the doubled rule by " << d;
      throw Error(ErrorKind::Resolution, os.str());
    }
  }
  return v;
}

}  // namespace

CauchyOperator::CauchyOperator(const UnivalentMap& f, std::vector<HarmonicDiskFunction> data, std::optional<cplx> q,
                               ExtrapolationSchedule sched, bool outer)
    : f_(f), data_(std::move(data)), q_(q), sched_(std::move(sched)), outer_(outer) {
  require_interior(f_, "the Cauchy operator");
  sched_.validate();
  if (data_.empty()) throw Error(ErrorKind::Config, "Cauchy operator needs at least one data function");
}

const CauchyOperator::Block& CauchyOperator::block(const ExtrapolationSchedule& s, int variant, std::size_t level,
                                                   std::size_t M) const {
  auto key = std::make_tuple(variant, level, M);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;
  auto b = std::make_unique<Block>();
  const double d = s.deltas[level];
  const double r = outer_ ? 1.0 + d : 1.0 - d;
  b->w.resize(M);
  b->a.assign(data_.size(), CVec(M));
  for (std::size_t j = 0; j < M; ++j) {
    cplx zeta = r * std::exp(kI * theta_of(j, M));
    b->w[j] = f_.eval_ext(zeta);
    cplx jac = zeta * f_.deriv_ext(zeta);
    cplx at = outer_ ? 1.0 / std::conj(zeta) : zeta;
    for (std::size_t c = 0; c < data_.size(); ++c) b->a[c][j] = data_[c].eval(at) * jac;
  }
  return *cache_.emplace(key, std::move(b)).first->second;
}

JResult CauchyOperator::run(const ExtrapolationSchedule& s, int variant, cplx z, bool& collided) const {
  collided = false;
  const std::size_t nd = data_.size();
  std::vector<CVec> rows;
  JResult out;
  CVec terms;
  auto level_sum = [&](std::size_t level, std::size_t M, double& mean_abs) -> std::optional<CVec> {
    const Block& b = block(s, variant, level, M);
    CVec kern(M);
    for (std::size_t j = 0; j < M; ++j) {
      cplx e = b.w[j] - z;
      if (std::abs(e) < kCollision * std::max(1.0, std::abs(z))) return std::nullopt;
      kern[j] = 1.0 / e;
      if (q_) {
        cplx eq = b.w[j] - *q_;
        if (std::abs(eq) < kCollision * std::max(1.0, std::abs(*q_))) return std::nullopt;
        kern[j] -= 1.0 / eq;
      }
    }
    CVec sums(nd);
    mean_abs = 0.0;
    terms.resize(M);
    for (std::size_t c = 0; c < nd; ++c) {
      double m = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        terms[j] = b.a[c][j] * kern[j];
        m += std::abs(terms[j]);
      }
      mean_abs = std::max(mean_abs, m / static_cast<double>(M));
      sums[c] = pairwise_sum(terms) / static_cast<double>(M);
    }
    return sums;
  };

  for (std::size_t level = 0; level < s.deltas.size(); ++level) {
    std::size_t M = kStartNodes;
    double mean_abs = 0.0;
    auto prev = level_sum(level, M, mean_abs);
    if (!prev) {
      collided = true;
      return out;
    }
    while (true) {
      if (2 * M > kMaxNodes) {
        std::ostringstream os;
        os << "trapezoid sums near the level curve did not settle with " << M << " nodes";
        throw Error(ErrorKind::Convergence, os.str());
      }
      M *= 2;
      auto next = level_sum(level, M, mean_abs);
      if (!next) {
        collided = true;
        return out;
      }
      double diff = 0.0, mag = 0.0;
      for (std::size_t c = 0; c < nd; ++c) {
        diff = std::max(diff, std::abs((*next)[c] - (*prev)[c]));
        mag = std::max(mag, std::abs((*next)[c]));
      }
      prev = std::move(next);
      double tol = std::max(1e-13 * std::max(1.0, mag), 1e3 * std::numeric_limits<double>::epsilon() * mean_abs);
      if (diff <= tol) break;
    }
    out.max_nodes = std::max(out.max_nodes, M);
    rows.push_back(std::move(*prev));
  }
  ExtrapolatedVec e = extrapolate(s.deltas, rows, s.order);
  out.values = std::move(e.value);
  out.error = e.error;
  return out;
}

JResult CauchyOperator::eval(cplx z) const {
  bool collided = false;
  JResult r = run(sched_, 0, z, collided);
  if (collided) {
    r = run(sched_.perturbed(0.987), 1, z, collided);
    if (collided) throw Error(ErrorKind::NodeCollision, "evaluation point coincides with quadrature nodes");
    r.perturbed = true;
  }
  double scale = 1.0;
  for (auto v : r.values) scale = std::max(scale, std::abs(v));
  if (r.error > sched_.tol * scale) {
    std::ostringstream os;
    os << "boundary limit extrapolation estimate " << r.error << " exceeds " << sched_.tol * scale;
    throw Error(ErrorKind::Convergence, os.str());
  }
  return r;
}

cplx cauchy_J(const UnivalentMap& f, const HarmonicDiskFunction& h, std::optional<cplx> q, cplx z,
              const ExtrapolationSchedule& sched) {
  return CauchyOperator(f, {h}, q, sched)(z);
}

bool in_image(const UnivalentMap& f, cplx w) {
  require_interior(f, "image test");
  return winding(image_of_circle(f, 1.0, 2048), w) != 0;
}

cplx preimage(const UnivalentMap& f, cplx w) {
  if (!in_image(f, w)) throw Error(ErrorKind::Domain, "point is not in the image of the disk");
  cplx best = 0.0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 40; ++i) {
    double r = 0.999 * i / 40.0;
    for (int j = 0; j < 128; ++j) {
      cplx z = r * std::exp(kI * theta_of(static_cast<std::size_t>(j), 128));
      double d = std::abs(f.eval(z) - w);
      if (d < best_d) {
        best_d = d;
        best = z;
      }
    }
  }
  return invert(f, w, best);
}

std::string JumpPair::to_json() const {
  nlohmann::json j;
  j["h1"] = nlohmann::json::parse(quasikit::to_json(h1));
  std::vector<double> re, im;
  for (auto v : h2_faber) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j["h2_faber"] = {{"re", re}, {"im", im}};
  j["h2_const"] = {{"re", h2_const.real()}, {"im", h2_const.imag()}};
  if (q)
    j["q"] = {{"re", q->real()}, {"im", q->imag()}};
  else
    j["q"] = "infinity";
  j["side_of_q"] = side_of_q;
  j["residual"] = residual;
  j["j_error"] = j_error;
  return j.dump();
}

JumpPair jump_decompose(const UnivalentMap& f, const FourierBoundaryData& u, std::optional<cplx> q,
                        const ExtrapolationSchedule& sched, double tol) {
  require_interior(f, "jump decomposition");
  HarmonicDiskFunction hD = harmonic_extension(u);
  CauchyOperator J(f, {hD}, std::nullopt, sched);
  JumpPair out;
  out.q = q;

  // h1 from its values on an interior circle below the innermost level curve offset
  const double rho = std::min(0.85, 1.0 - sched.deltas.front() - 0.05);
  constexpr std::size_t K = 256;
  constexpr int Nh = 64;
  CVec vals(K);
  double jerr = 0.0, vmax = 0.0;
  for (std::size_t j = 0; j < K; ++j) {
    JResult r = J.eval(f.eval(rho * std::exp(kI * theta_of(j, K))));
    vals[j] = r.values[0];
    jerr = std::max(jerr, r.error);
    vmax = std::max(vmax, std::abs(vals[j]));
  }
  CVec c = fft::coefficients(vals, Nh, rho);
  const double noise = std::max(jerr, 1e-15 * std::max(1.0, vmax));
  out.h1 = LaurentSeries(0, Nh);
  for (int n = 0; n <= Nh; ++n) {
    cplx a = c[static_cast<std::size_t>(n + Nh)];
    // coefficients below the amplified evaluation noise carry no information
    out.h1.at(n) = std::abs(a) < 10.0 * noise * std::pow(rho, -n) ? cplx(0.0) : a;
  }

  // h2 from the exterior collar; J vanishes at infinity, so no constant
  const int N2 = std::max(u.N, 1) + 8;
  FaberInverse inv = faber_inverse(f, [&](cplx w) {
    JResult r = J.eval(w);
    jerr = std::max(jerr, r.error);
    return r.values[0];
  }, N2, ExtrapolationSchedule::collar());
  out.h2_faber = inv.h;
  out.j_error = jerr;

  if (q) {
    cplx cq = J(*q);
    out.h1.at(0) -= cq;
    out.h2_const = -cq;
    out.side_of_q = in_image(f, *q) ? "omega1" : "omega2";
  } else {
    out.side_of_q = "omega2";
  }

  FaberSeries fs(f, out.h2_faber, std::nullopt, std::max(64, 8 * N2));
  constexpr std::size_t R = 1024;
  double res = 0.0;
  for (std::size_t j = 0; j < R; ++j) {
    double th = theta_of(j, R);
    cplx e = std::exp(kI * th);
    cplx u2 = fs.pulled(std::conj(e)) + out.h2_const;
    res = std::max(res, std::abs(u.eval(th) - (out.h1.eval(e) - u2)));
  }
  out.residual = res;
  if (res > tol) {
    std::ostringstream os;
    os << "jump decomposition reproduces the boundary data only to " << res;
    throw Error(ErrorKind::Tolerance, os.str());
  }
  return out;
}

cplx schiffer_T12(const UnivalentMap& f, const CVec& alpha, cplx z, int gl, int nt, bool self_check,
                  double* check_diff) {
  require_interior(f, "T12");
  if (in_image(f, z)) throw Error(ErrorKind::Domain, "T12 is evaluated outside the closed image");
  return checked_area(gl, nt, self_check, check_diff, [&](cplx zeta) {
           cplx e = f.eval_ext(zeta) - z;
           return density(alpha, zeta) * f.deriv_ext(zeta) / (e * e);
         }) / kPi;
}

cplx schiffer_T11_at(const UnivalentMap& f, const CVec& alpha, cplx xi, int gl, int nt, bool self_check,
                     double* check_diff) {
  require_interior(f, "T11");
  if (!(std::abs(xi) < 1.0)) throw Error(ErrorKind::Domain, "T11 needs a point of the open disk");
  cplx v = checked_area(gl, nt, self_check, check_diff,
                        [&](cplx zeta) { return schiffer_K0(f, zeta, xi) * density(alpha, zeta); });
  return v / (kPi * f.deriv(xi));
}

cplx schiffer_T11(const UnivalentMap& f, const CVec& alpha, cplx z, int gl, int nt, bool self_check,
                  double* check_diff) {
  return schiffer_T11_at(f, alpha, preimage(f, z), gl, nt, self_check, check_diff);
}

void write_rows_csv(std::ostream& os, const std::vector<ResidualRow>& rows) {
  os << "test,re,im,residual\n";
  os.precision(17);
  for (const auto& r : rows) os << r.test << ',' << r.point.real() << ',' << r.point.imag() << ',' << r.residual << '\n';
}

namespace {
void push(VerifyReport& rep, std::string test, cplx p, double res) {
  rep.max_residual = std::max(rep.max_residual, res);
  rep.rows.push_back({std::move(test), p, res});
}
}  // namespace

VerifyReport verify_wirtinger_identities(const UnivalentMap& f, const CVec& hbar, const CVec& interior_pts,
                                         const CVec& exterior_pts, double h_fd, const ExtrapolationSchedule& sched) {
  HarmonicDiskFunction hD(static_cast<int>(hbar.size()));
  for (std::size_t k = 0; k < hbar.size(); ++k) hD.antiholo[k + 1] = hbar[k];
  CVec alpha = dbar_density(hD);
  CauchyOperator J(f, {hD}, std::nullopt, sched);
  auto wirtinger = [&](cplx z, cplx& d, cplx& db) {
    cplx fx = (J(z + h_fd) - J(z - h_fd)) / (2.0 * h_fd);
    cplx fy = (J(z + kI * h_fd) - J(z - kI * h_fd)) / (2.0 * h_fd);
    d = 0.5 * (fx - kI * fy);
    db = 0.5 * (fx + kI * fy);
  };
  VerifyReport rep;
  for (cplx z : exterior_pts) {
    cplx d, db;
    wirtinger(z, d, db);
    push(rep, "exterior_dJ", z, std::abs(d - schiffer_T12(f, alpha, z)));
    push(rep, "exterior_dbarJ", z, std::abs(db));
  }
  for (cplx z : interior_pts) {
    cplx d, db;
    wirtinger(z, d, db);
    cplx xi = preimage(f, z);
    cplx dh = hD.dz(xi) / f.deriv(xi);
    push(rep, "interior_dJ", z, std::abs(d - (dh + schiffer_T11_at(f, alpha, xi))));
    push(rep, "interior_dbarJ", z, std::abs(db));
  }
  return rep;
}

Extrapolated anchor_limit(const UnivalentMap& f, const std::function<cplx(cplx)>& h_collar,
                          const std::function<cplx(cplx)>& alpha, const ExtrapolationSchedule& sched) {
  require_interior(f, "anchor limit");
  sched.validate();
  CVec rows;
  auto level = [&](double r, std::size_t M) {
    CVec t(M);
    for (std::size_t j = 0; j < M; ++j) {
      cplx zeta = r * std::exp(kI * theta_of(j, M));
      t[j] = alpha(f.eval_ext(zeta)) * h_collar(zeta) * f.deriv_ext(zeta) * kI * zeta;
    }
    return pairwise_sum(t) * (2.0 * kPi / static_cast<double>(M));
  };
  for (double d : sched.deltas) {
    std::size_t M = kStartNodes;
    cplx prev = level(1.0 - d, M);
    while (true) {
      if (2 * M > kMaxNodes) throw Error(ErrorKind::Convergence, "anchor contour sums did not settle");
      M *= 2;
      cplx next = level(1.0 - d, M);
      bool ok = std::abs(next - prev) <= 1e-13 * std::max(1.0, std::abs(next));
      prev = next;
      if (ok) break;
    }
    rows.push_back(prev);
  }
  Extrapolated e = extrapolate(sched.deltas, rows, sched.order);
  if (e.error > sched.tol * std::max(1.0, std::abs(e.value)))
    throw Error(ErrorKind::Convergence, "anchor limit extrapolation did not settle");
  return e;
}

HarmonicDiskFunction bounce(const std::function<cplx(cplx)>& h_collar, int N, const ExtrapolationSchedule& sched) {
  sched.validate();
  const std::size_t M = std::max<std::size_t>(256, next_pow2(static_cast<std::size_t>(8 * N)));
  std::vector<CVec> rows;
  for (double d : sched.deltas) {
    CVec v(M);
    for (std::size_t j = 0; j < M; ++j) v[j] = h_collar((1.0 - d) * std::exp(kI * theta_of(j, M)));
    rows.push_back(std::move(v));
  }
  ExtrapolatedVec e = extrapolate(sched.deltas, rows, sched.order);
  double scale = 1.0;
  for (auto x : e.value) scale = std::max(scale, std::abs(x));
  if (e.error > sched.tol * scale) throw Error(ErrorKind::Convergence, "boundary trace of the collar data did not settle");
  FourierBoundaryData u(N);
  u.c = fft::coefficients(e.value, N);
  return harmonic_extension(u);
}

VerifyReport mobius_invariance_suite(const UnivalentMap& f, const Moebius& M,
                                     const std::vector<HarmonicDiskFunction>& inputs, const CVec& points,
                                     std::optional<cplx> q, const ExtrapolationSchedule& sched) {
  UnivalentMap Mf = moebius_compose(M, f);
  std::optional<cplx> Mq;
  if (!q) {
    if (!M.affine()) Mq = M.at_infinity();
  } else if (std::abs(M.c * *q + M.d) > 0.0) {
    Mq = M(*q);
  }
  CauchyOperator J1(f, inputs, q, sched), J2(Mf, inputs, Mq, sched);
  VerifyReport rep;
  for (cplx z : points) {
    JResult a = J1.eval(z), b = J2.eval(M(z));
    for (std::size_t c = 0; c < inputs.size(); ++c) push(rep, "J_mobius", z, std::abs(a.values[c] - b.values[c]));
    if (in_image(f, z)) continue;
    for (const auto& h : inputs) {
      CVec alpha = dbar_density(h);
      cplx t1 = schiffer_T12(f, alpha, z);
      cplx t2 = schiffer_T12(Mf, alpha, M(z)) * M.deriv(z);
      push(rep, "T12_mobius", z, std::abs(t1 - t2));
    }
  }
  return rep;
}

VerifyReport two_sided_limit_check(const UnivalentMap& f, const HarmonicDiskFunction& h, const CVec& points,
                                   const ExtrapolationSchedule& sched) {
  CVec outer_curve = image_of_circle(f, 1.0 + sched.deltas.front(), 2048);
  for (cplx z : points)
    if (winding(outer_curve, z) != 0)
      throw Error(ErrorKind::Domain, "two-sided check needs points outside the outermost level curve");
  CauchyOperator inner(f, {h}, std::nullopt, sched, false), outer(f, {h}, std::nullopt, sched, true);
  VerifyReport rep;
  for (cplx z : points) push(rep, "two_sided", z, std::abs(inner(z) - outer(z)));
  return rep;
}

VerifyReport transmitted_jump_check(const UnivalentMap& f, const HarmonicDiskFunction& h, const CVec& xis,
                                    const ExtrapolationSchedule& sched) {
  CauchyOperator J(f, {h}, std::nullopt, sched);
  CollarTransmit t = transmit_holomorphic(f, [&](cplx w) { return J.eval(w).values; }, 1, 64);
  HarmonicDiskFunction ext = harmonic_extension(t.traces[0]);
  VerifyReport rep;
  for (cplx xi : xis) push(rep, "transmitted_jump", xi, std::abs(h.eval(xi) - (J(f.eval(xi)) - ext.eval(xi))));
  return rep;
}

GrunskyMatrix operator_grunsky(const UnivalentMap& f, int N, std::optional<cplx> q, const ExtrapolationSchedule& sched) {
  require_interior(f, "operator Grunsky route");
  if (N < 1) throw Error(ErrorKind::Config, "Grunsky order must be positive");
  std::vector<HarmonicDiskFunction> data;
  for (int n = 1; n <= N; ++n) {
    HarmonicDiskFunction h(n);
    h.antiholo[n] = 1.0;
    data.push_back(std::move(h));
  }
  CauchyOperator J(f, data, q, sched);
  const int Nr = std::max(64, N + 16);
  const std::size_t M = next_pow2(static_cast<std::size_t>(4 * Nr));
  CollarTransmit t = transmit_holomorphic(
      f,
      [&](cplx w) {
        CVec v = J.eval(w).values;
        for (auto& x : v) x = -x;
        return v;
      },
      data.size(), Nr, ExtrapolationSchedule::collar(), M);
  Eigen::MatrixXcd raw(N, N);
  for (int n = 1; n <= N; ++n)
    for (int k = 1; k <= N; ++k) raw(n - 1, k - 1) = t.traces[static_cast<std::size_t>(n - 1)][k];
  return grunsky_from_raw(raw);
}

}  // namespace quasikit
