#include "quasikit/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"
#include "quasikit/fft.hpp"

namespace quasikit {

namespace {
constexpr double kTwoPi = 2.0 * kPi;

double grid_theta(std::size_t j, std::size_t M) { return kTwoPi * static_cast<double>(j) / static_cast<double>(M); }
}  // namespace

CircleHomeo CircleHomeo::identity() { return CircleHomeo{}; }

CircleHomeo CircleHomeo::rotation(double alpha) {
  CircleHomeo h;
  h.tag_ = Tag::Rotation;
  h.rot_ = alpha;
  return h;
}

CircleHomeo CircleHomeo::sine(double a) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::Domain, "theta + a sin(theta) needs |a| < 1");
  CircleHomeo h;
  h.tag_ = Tag::Sine;
  h.a_ = a;
  return h;
}

CircleHomeo CircleHomeo::automorphism(cplx a, double rot) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::Domain, "disk automorphism needs |a| < 1");
  CircleHomeo h;
  h.tag_ = Tag::Automorphism;
  h.aut_ = a;
  h.rot_ = rot;
  return h;
}

CircleHomeo CircleHomeo::from_samples(const std::vector<double>& psi) {
  const std::size_t M = psi.size();
  if (M < 4) throw Error(ErrorKind::Resolution, "circle homeomorphism needs at least 4 samples");
  const double h = kTwoPi / static_cast<double>(M);
  std::vector<double> sec(M);
  for (std::size_t j = 0; j < M; ++j) {
    double next = j + 1 < M ? psi[j + 1] : psi[0] + kTwoPi;
    sec[j] = (next - psi[j]) / h;
    if (!(sec[j] > 0.0)) throw Error(ErrorKind::Domain, "lift samples are not strictly increasing");
  }
  CircleHomeo c;
  c.tag_ = Tag::None;
  c.psi_ = psi;
  c.slope_.resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    double l = sec[(j + M - 1) % M], r = sec[j];
    c.slope_[j] = 2.0 / (1.0 / l + 1.0 / r);
  }
  return c;
}

double CircleHomeo::operator()(double theta) const {
  switch (tag_) {
    case Tag::Identity: return theta;
    case Tag::Rotation: return theta + rot_;
    case Tag::Sine: return theta + a_ * std::sin(theta);
    case Tag::Automorphism: return rot_ + theta + 2.0 * std::arg(1.0 - aut_ * std::exp(-kI * theta));
    case Tag::None: break;
  }
  const std::size_t M = psi_.size();
  const double h = kTwoPi / static_cast<double>(M);
  double turns = std::floor(theta / kTwoPi);
  double t = theta - turns * kTwoPi;
  std::size_t j = std::min(static_cast<std::size_t>(t / h), M - 1);
  double s = (t - h * static_cast<double>(j)) / h;
  double y0 = psi_[j], y1 = j + 1 < M ? psi_[j + 1] : psi_[0] + kTwoPi;
  double d0 = slope_[j], d1 = slope_[(j + 1) % M];
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1 + turns * kTwoPi;
}

CircleHomeo CircleHomeo::inverse(std::size_t M) const {
  switch (tag_) {
    case Tag::Identity: return identity();
    case Tag::Rotation: return rotation(-rot_);
    case Tag::Automorphism: return automorphism(-aut_ * std::exp(kI * rot_), -rot_);
    default: break;
  }
  double B = 0.0;
  for (std::size_t j = 0; j < 4096; ++j) {
    double th = grid_theta(j, 4096);
    B = std::max(B, std::abs((*this)(th) - th));
  }
  std::vector<double> inv(M);
  for (std::size_t j = 0; j < M; ++j) {
    double y = grid_theta(j, M);
    double lo = y - B - 1.0, hi = y + B + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(y)); ++it) {
      double mid = 0.5 * (lo + hi);
      ((*this)(mid) < y ? lo : hi) = mid;
    }
    inv[j] = 0.5 * (lo + hi);
  }
  return from_samples(inv);
}

std::string CircleHomeo::to_json(std::size_t M) const {
  nlohmann::json j;
  std::vector<double> psi;
  if (tag_ == Tag::None) {
    psi = psi_;
  } else {
    for (std::size_t k = 0; k < M; ++k) psi.push_back((*this)(grid_theta(k, M)));
  }
  j["grid"] = psi.size();
  j["psi"] = psi;
  switch (tag_) {
    case Tag::None: j["analytic"] = nullptr; break;
    case Tag::Identity: j["analytic"] = {{"kind", "identity"}}; break;
    case Tag::Rotation: j["analytic"] = {{"kind", "rotation"}, {"alpha", rot_}}; break;
    case Tag::Sine: j["analytic"] = {{"kind", "sine"}, {"a", a_}}; break;
    case Tag::Automorphism:
      j["analytic"] = {{"kind", "automorphism"}, {"a", {{"re", aut_.real()}, {"im", aut_.imag()}}}, {"rot", rot_}};
      break;
  }
  return j.dump();
}

FourierBoundaryData compose_boundary(const FourierBoundaryData& u, const CircleHomeo& phi, std::size_t M,
                                     double* spillover, int n_out) {
  if (M < static_cast<std::size_t>(4 * u.N)) throw Error(ErrorKind::Resolution, "composition grid needs M >= 4N");
  if (n_out <= 0) n_out = static_cast<int>(M / 4);
  const int L = static_cast<int>(M / 2) - 1;
  if (n_out > L) throw Error(ErrorKind::Resolution, "output order exceeds the grid's Nyquist range");
  CVec v(M);
  for (std::size_t j = 0; j < M; ++j) v[j] = u.eval(phi(grid_theta(j, M)));
  CVec c = fft::coefficients(v, L);
  FourierBoundaryData out(n_out);
  double spill = 0.0;
  for (int n = -L; n <= L; ++n) {
    if (std::abs(n) <= n_out)
      out.at(n) = c[n + L];
    else
      spill += std::abs(n) * std::norm(c[n + L]);
  }
  if (spillover) *spillover = spill;
  double e_in = u.energy();
  if (e_in > 0.0 && spill > 0.1 * e_in) {
    std::ostringstream os;
    os << "composition spills " << spill << " of energy " << e_in << " past the output order";
    throw Error(ErrorKind::Undersampling, os.str());
  }
  return out;
}

double qs_modulus(const CircleHomeo& phi, int G) {
  double k = 1.0;
  for (int i = 0; i < G; ++i) {
    double a = kTwoPi * i / G;
    cplx pa = phi.point(a);
    for (int m = 1; m < G; ++m) {
      double b = kPi * m / G;
      double num = std::abs(phi.point(a + b) - pa), den = std::abs(pa - phi.point(a - b));
      k = std::max({k, num / den, den / num});
    }
  }
  return k;
}

EnergyRatioReport energy_ratio_report(const CircleHomeo& phi, int N, std::size_t M) {
  if (N < 1) throw Error(ErrorKind::Config, "energy ratio needs N >= 1");
  if (M == 0) M = std::max<std::size_t>(1024, next_pow2(static_cast<std::size_t>(32 * N)));
  if (M < static_cast<std::size_t>(4 * N)) throw Error(ErrorKind::Resolution, "energy ratio grid needs M >= 4N");
  const int L = static_cast<int>(M / 2) - 1;
  std::vector<int> modes;
  for (int n = -N; n <= N; ++n)
    if (n != 0) modes.push_back(n);
  const Eigen::Index B = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd C(2 * L + 1, B);
  std::vector<double> psi(M);
  for (std::size_t j = 0; j < M; ++j) psi[j] = phi(grid_theta(j, M));
  double spill = 0.0, total = 0.0;
  for (Eigen::Index b = 0; b < B; ++b) {
    CVec v(M);
    for (std::size_t j = 0; j < M; ++j) v[j] = std::exp(kI * (modes[static_cast<std::size_t>(b)] * psi[j]));
    CVec c = fft::coefficients(v, L);
    for (int k = -L; k <= L; ++k) {
      // weight by sqrt|k| so that C^* C is the energy form; normalize by sqrt|n| for B = diag|n|
      double wk = std::sqrt(static_cast<double>(std::abs(k)));
      C(k + L, b) = c[k + L] * wk / std::sqrt(static_cast<double>(std::abs(modes[static_cast<std::size_t>(b)])));
      double e = std::abs(k) * std::norm(c[k + L]);
      total += e;
      if (std::abs(k) > L / 2) spill += e;
    }
  }
  if (spill > 1e-12 * total) {
    std::ostringstream os;
    os << "energy ratio grid M = " << M << " under-resolves the composed modes";
    throw Error(ErrorKind::Undersampling, os.str());
  }
  Eigen::MatrixXcd A = C.adjoint() * C;
  EnergyRatioReport rep;
  PowerResult p = power_iteration(A, 1e-13);
  rep.C_hat = std::sqrt(std::max(0.0, p.value));
  rep.iterations = p.iterations;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  rep.eig_check = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  rep.min_eig = es.eigenvalues().minCoeff();
  if (rep.min_eig <= 1e-14 * es.eigenvalues().maxCoeff())
    throw Error(ErrorKind::Conditioning, "energy Gram matrix is numerically singular");
  return rep;
}

double energy_ratio_norm(const CircleHomeo& phi, int N, std::size_t M) {
  return energy_ratio_report(phi, N, M).C_hat;
}

TransmitResult transmit(const UnivalentMap& f, const std::function<cplx(cplx)>& h, int N,
                        const ExtrapolationSchedule& sched) {
  if (f.side() != Side::Interior) throw Error(ErrorKind::Domain, "transmit expects an interior map");
  sched.validate();
  const std::size_t M = std::max<std::size_t>(256, next_pow2(static_cast<std::size_t>(8 * N)));
  std::vector<CVec> rows;
  for (double d : sched.deltas) {
    double rho = 1.0 + d;
    CVec v(M);
    for (std::size_t j = 0; j < M; ++j) v[j] = h(f.eval_ext(rho * std::exp(kI * grid_theta(j, M))));
    rows.push_back(std::move(v));
  }
  ExtrapolatedVec e = extrapolate(sched.deltas, rows, sched.order);
  double scale = 1.0;
  for (auto x : e.value) scale = std::max(scale, std::abs(x));
  TransmitResult out;
  out.error = e.error;
  if (e.error > sched.tol * scale) {
    std::ostringstream os;
    os << "boundary samples did not settle under extrapolation, estimate " << e.error;
    throw Error(ErrorKind::Regularity, os.str());
  }
  out.trace = FourierBoundaryData(N);
  out.trace.c = fft::coefficients(e.value, N);
  out.h = harmonic_extension(out.trace);
  out.output_energy = dirichlet_energy(out.h);

  // collar energy of h o f on 1 < |zeta| < 1 + delta_0: (1/2 pi) integral |grad u|^2
  std::vector<double> rx, rw;
  gauss_legendre(16, 1.0, 1.0 + sched.deltas.front(), rx, rw);
  const double fd = 1e-5;
  std::vector<double> terms;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double r = rx[i];
    CVec v(M), vp(M), vm(M);
    for (std::size_t j = 0; j < M; ++j) {
      cplx u = std::exp(kI * grid_theta(j, M));
      v[j] = h(f.eval_ext(r * u));
      vp[j] = h(f.eval_ext((r + fd) * u));
      vm[j] = h(f.eval_ext((r - fd) * u));
    }
    const int L = static_cast<int>(M / 2) - 1;
    CVec c = fft::coefficients(v, L);
    double ang = 0.0;
    for (int n = -L; n <= L; ++n) ang += n * n * std::norm(c[n + L]);
    double rad = 0.0;
    for (std::size_t j = 0; j < M; ++j) rad += std::norm((vp[j] - vm[j]) / (2.0 * fd));
    rad /= static_cast<double>(M);
    // mean over theta of |u_r|^2 + |u_theta|^2 / r^2, times 2 pi r dr, divided by 2 pi
    terms.push_back((rad + ang / (r * r)) * r * rw[i]);
  }
  out.collar_energy = pairwise_sum(terms.data(), terms.size());
  return out;
}

CollarTransmit transmit_holomorphic(const UnivalentMap& f, const std::function<CVec(cplx)>& H, std::size_t ndata,
                                    int N, const ExtrapolationSchedule& sched, std::size_t M) {
  if (f.side() != Side::Interior) throw Error(ErrorKind::Domain, "transmit expects an interior map");
  sched.validate();
  if (M < static_cast<std::size_t>(2 * N + 1)) throw Error(ErrorKind::Resolution, "collar grid too small for order N");
  std::vector<CVec> rows;
  for (double d : sched.deltas) {
    double rho = 1.0 + d;
    std::vector<CVec> vals(ndata, CVec(M));
    for (std::size_t j = 0; j < M; ++j) {
      CVec v = H(f.eval_ext(rho * std::exp(kI * grid_theta(j, M))));
      for (std::size_t c = 0; c < ndata; ++c) vals[c][j] = v[c];
    }
    CVec row;
    for (std::size_t c = 0; c < ndata; ++c) {
      CVec co = fft::coefficients(vals[c], N, rho);
      row.insert(row.end(), co.begin(), co.end());
    }
    rows.push_back(std::move(row));
  }
  ExtrapolatedVec e = extrapolate(sched.deltas, rows, sched.order);
  CollarTransmit out;
  out.error = e.error;
  double scale = 1.0;
  for (auto x : e.value) scale = std::max(scale, std::abs(x));
  if (e.error > sched.tol * scale) {
    std::ostringstream os;
    os << "collar Laurent reads disagree by " << e.error << "; data not holomorphic across the collar";
    throw Error(ErrorKind::Regularity, os.str());
  }
  const std::size_t W = static_cast<std::size_t>(2 * N + 1);
  for (std::size_t c = 0; c < ndata; ++c) {
    FourierBoundaryData u(N);
    std::copy(e.value.begin() + static_cast<long>(c * W), e.value.begin() + static_cast<long>((c + 1) * W), u.c.begin());
    out.traces.push_back(std::move(u));
  }
  return out;
}

CircleHomeo welding_phi(const UnivalentMap& f, const UnivalentMap& g, std::size_t M) {
  if (f.side() != Side::Interior || g.side() != Side::Exterior)
    throw Error(ErrorKind::Pairing, "welding needs an interior map and an exterior map");
  const std::size_t P = 512;
  CVec probe(P);
  for (std::size_t j = 0; j < P; ++j) probe[j] = g.eval_ext(std::exp(kI * grid_theta(j, P)));
  std::vector<double> psi(M);
  cplx z = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    cplx w = f.eval_ext(std::exp(kI * grid_theta(j, M)));
    if (j == 0) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < P; ++k)
        if (std::abs(probe[k] - w) < std::abs(probe[best] - w)) best = k;
      if (std::abs(probe[best] - w) > 0.1 * (1.0 + std::abs(w)))
        throw Error(ErrorKind::Pairing, "boundary curves of the pair do not match");
      z = std::exp(kI * grid_theta(best, P));
    }
    try {
      z = invert(g, w, z, 1e-13);
    } catch (const Error&) {
      throw Error(ErrorKind::Pairing, "boundary point of f is not on the image curve of g");
    }
    if (std::abs(std::abs(z) - 1.0) > 1e-8)
      throw Error(ErrorKind::Pairing, "boundary curves of the pair do not match");
    double a = std::arg(z);
    if (j == 0) {
      psi[j] = a;
    } else {
      double d = std::remainder(a - psi[j - 1], kTwoPi);
      psi[j] = psi[j - 1] + d;
    }
  }
  return CircleHomeo::from_samples(psi);
}

void write_norm_csv(std::ostream& os, const std::vector<std::pair<int, double>>& rows) {
  os << "N,C_hat\n";
  os.precision(17);
  for (auto [n, c] : rows) os << n << ',' << c << '\n';
}

}  // namespace quasikit
