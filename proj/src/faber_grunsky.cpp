#include "quasikit/faber_grunsky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "quasikit/fft.hpp"
#include "quasikit/series.hpp"

namespace quasikit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_abs(const CVec& v) {
  double m = 0.0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

CVec circle(std::size_t M, double r) {
  CVec z(M);
  for (std::size_t j = 0; j < M; ++j)
    z[j] = r * std::exp(kI * (2.0 * kPi * static_cast<double>(j) / static_cast<double>(M)));
  return z;
}

// Winding number of the closed polygon through pts around v.
int winding(const CVec& pts, cplx v) {
  double total = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    cplx a = pts[j] - v, b = pts[(j + 1) % pts.size()] - v;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

CVec read_G(const ExteriorForm& ef, const CVec& z) {
  CVec G(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    G[j] = ef.G(z[j]);
    if (!std::isfinite(G[j].real()) || !std::isfinite(G[j].imag()))
      throw Error(ErrorKind::Domain, "exterior form is singular on the sampling circle");
  }
  return G;
}

std::size_t grunsky_grid(int N, int K, std::size_t M) {
  if (M) return M;
  return std::max<std::size_t>(256, next_pow2(static_cast<std::size_t>(8 * std::max(N, K))));
}

}  // namespace

bool infinity_in_target(const ExteriorSamples& es) {
  return es.form.interior_convention && winding(es.G, 0.0) == 1;
}

ExteriorSamples exterior_samples(const UnivalentMap& map, std::size_t M, double r_s) {
  if (!(r_s > 1.0)) throw Error(ErrorKind::Domain, "sampling radius must exceed 1");
  ExteriorSamples es;
  es.form = exterior_form(map);
  es.r_s = r_s;
  es.z = circle(M, r_s);
  es.G = read_G(es.form, es.z);
  const int L = static_cast<int>(M / 2) - 1;
  CVec c = fft::coefficients(es.G, L, r_s);
  double scale = std::max(1.0, max_abs(es.G));
  if (std::abs(c[L + 1] - 1.0) > 1e-8 * scale)
    throw Error(ErrorKind::Consistency, "exterior form is not normalized to G(z) = z + O(1)");
  for (int n = 2; n <= L; ++n)
    if (std::abs(c[L + n]) * std::pow(r_s, n) > 1e-8 * scale)
      throw Error(ErrorKind::Consistency, "exterior form has positive powers beyond z");
  es.b.resize(static_cast<std::size_t>(L) + 1);
  for (int k = 0; k <= L; ++k) es.b[static_cast<std::size_t>(k)] = c[L - k];

  // spectral derivative: z G'(z) = sum n c_n z^n
  CVec nc(c.size());
  for (int n = -L; n <= L; ++n) nc[n + L] = static_cast<double>(n) * c[n + L];
  CVec zdG = fft::synthesize(nc, L, M, r_s);
  es.dG.resize(M);
  for (std::size_t j = 0; j < M; ++j) es.dG[j] = zdG[j] / es.z[j];

  // aliasing check: same coefficients read on a larger circle
  const double r2 = 1.5 * r_s;
  CVec c2 = fft::coefficients(read_G(es.form, circle(M, r2)), L, r2);
  double bmax = 1.0;
  for (int k = 0; k <= std::min(L, 16); ++k) bmax = std::max(bmax, std::abs(c[L - k]));
  for (int k = 0; k <= std::min(L, 16); ++k)
    es.alias_error = std::max(es.alias_error, std::abs(c[L - k] - c2[L - k]) / bmax);
  return es;
}

cplx FaberTable::eval(int n, cplx w) const {
  const CVec& p = polys.at(static_cast<std::size_t>(n - 1));
  cplx s = 0.0;
  for (std::size_t j = p.size(); j-- > 0;) s = s * w + p[j];
  return s;
}

cplx FaberTable::deriv(int n, cplx w) const {
  const CVec& p = polys.at(static_cast<std::size_t>(n - 1));
  cplx s = 0.0;
  for (std::size_t j = p.size(); j-- > 1;) s = s * w + static_cast<double>(j) * p[j];
  return s;
}

std::string FaberTable::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : polys) {
    nlohmann::json row = nlohmann::json::array();
    for (auto v : p) row.push_back({{"re", v.real()}, {"im", v.imag()}});
    arr.push_back(row);
  }
  return arr.dump();
}

FaberTable faber_polynomials(const UnivalentMap& map, int N, double r_s) {
  if (N < 1) throw Error(ErrorKind::Config, "Faber order must be positive");
  std::size_t M = grunsky_grid(N, N, 0);
  ExteriorSamples es = exterior_samples(map, M, r_s);
  GridSamples inner{es.G};
  // gamma[j][m]: coefficient of z^m in G^j, 0 <= m <= j
  std::vector<CVec> gamma(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) {
    LaurentSeries wj(j, j);
    wj.at(j) = 1.0;
    LaurentSeries pj = compose_series(wj, inner, 0, j, r_s);
    gamma[static_cast<std::size_t>(j)] = pj.c;
  }
  double R = max_abs(es.G);
  FaberTable T;
  T.N = N;
  for (int n = 1; n <= N; ++n) {
    CVec p(static_cast<std::size_t>(n) + 1, cplx(0.0));
    p[static_cast<std::size_t>(n)] = 1.0;
    for (int m = n - 1; m >= 0; --m) {
      cplx s = 0.0;
      for (int j = m + 1; j <= n; ++j) s += p[static_cast<std::size_t>(j)] * gamma[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
      p[static_cast<std::size_t>(m)] = -s;
    }
    double cond = 0.0;
    for (int j = 0; j <= n; ++j) cond += std::abs(p[static_cast<std::size_t>(j)]) * std::pow(R, j);
    cond /= std::pow(r_s, n);
    T.condition = std::max(T.condition, cond);
    T.polys.push_back(std::move(p));
  }
  if (T.condition > 1e12) {
    std::ostringstream os;
    os << "Faber triangular system is ill-conditioned, estimate " << T.condition;
    throw Error(ErrorKind::Conditioning, os.str());
  }
  return T;
}

GrunskyCoefficients grunsky_coeffs(const UnivalentMap& map, int N, int K, const GrunskyOptions& opt) {
  if (N < 1) throw Error(ErrorKind::Config, "Grunsky order must be positive");
  if (K <= 0) K = N;
  GrunskyCoefficients gc;
  gc.N = N;
  gc.K = K;
  gc.M = grunsky_grid(N, K, opt.M);
  const std::size_t M = gc.M;
  if (M < static_cast<std::size_t>(2 * std::max(N, K) + 2))
    throw Error(ErrorKind::Resolution, "Grunsky grid too small for the requested order");
  gc.samples = exterior_samples(map, M, opt.r_s);
  const ExteriorSamples& es = gc.samples;
  if (es.alias_error > opt.alias_tol) {
    std::ostringstream os;
    os << "Laurent coefficients differ between r_s and 1.5 r_s by " << es.alias_error;
    throw Error(ErrorKind::Undersampling, os.str());
  }
  const CVec& b = es.b;
  auto bk = [&](int k) { return k < static_cast<int>(b.size()) ? b[static_cast<std::size_t>(k)] : cplx(0.0); };

  // Faber recurrence in sample space: F_{n+1} = (G - b_0) F_n - sum_{k=1}^n b_k F_{n-k} - n b_n
  gc.F.assign(static_cast<std::size_t>(N) + 1, CVec(M));
  std::fill(gc.F[0].begin(), gc.F[0].end(), cplx(1.0));
  for (int n = 0; n < N; ++n) {
    CVec& next = gc.F[static_cast<std::size_t>(n) + 1];
    const CVec& cur = gc.F[static_cast<std::size_t>(n)];
    for (std::size_t j = 0; j < M; ++j) {
      cplx s = (es.G[j] - b[0]) * cur[j];
      for (int k = 1; k <= n; ++k) s -= bk(k) * gc.F[static_cast<std::size_t>(n - k)][j];
      s -= static_cast<double>(n) * bk(n);
      next[j] = s;
    }
  }

  CVec offsets(static_cast<std::size_t>(N), cplx(0.0));
  gc.b.resize(N, K);
  gc.constants.assign(static_cast<std::size_t>(N), cplx(0.0));
  const int L = static_cast<int>(M / 2) - 1;
  for (int n = 1; n <= N; ++n) {
    CVec c = fft::coefficients(gc.F[static_cast<std::size_t>(n)], L, es.r_s);
    for (int m = 1; m < n; ++m) gc.residue_error = std::max(gc.residue_error, std::abs(c[L + m]));
    gc.residue_error = std::max(gc.residue_error, std::abs(c[L + n] - 1.0));
    gc.constants[static_cast<std::size_t>(n - 1)] = c[L];
    for (int k = 1; k <= K; ++k) gc.b(n - 1, k - 1) = c[L - k];
  }
  if (opt.q || infinity_in_target(es)) {
    cplx v = opt.q ? es.form.coord(*opt.q) : cplx(0.0);
    CVec phi = faber_values(gc, v);
    for (int n = 1; n <= N; ++n) gc.constants[static_cast<std::size_t>(n - 1)] -= phi[static_cast<std::size_t>(n - 1)];
  }
  return gc;
}

CVec faber_values(const GrunskyCoefficients& gc, cplx v) {
  const ExteriorSamples& es = gc.samples;
  const std::size_t M = es.z.size();
  if (winding(es.G, v) != 1)
    throw Error(ErrorKind::Domain, "point is not enclosed by the sampled image curve");
  CVec w(M);
  for (std::size_t j = 0; j < M; ++j) w[j] = es.dG[j] * es.z[j] / (es.G[j] - v) / static_cast<double>(M);
  CVec out(static_cast<std::size_t>(gc.N));
  CVec t(M);
  for (int n = 1; n <= gc.N; ++n) {
    for (std::size_t j = 0; j < M; ++j) t[j] = gc.F[static_cast<std::size_t>(n)][j] * w[j];
    out[static_cast<std::size_t>(n - 1)] = pairwise_sum(t);
  }
  return out;
}

GrunskyMatrix grunsky_from_raw(const Eigen::MatrixXcd& raw) {
  GrunskyMatrix G;
  G.N = static_cast<int>(raw.rows());
  G.raw = raw;
  G.normalized.resize(raw.rows(), raw.cols());
  for (Eigen::Index n = 0; n < raw.rows(); ++n)
    for (Eigen::Index k = 0; k < raw.cols(); ++k)
      G.normalized(n, k) = std::sqrt(static_cast<double>(k + 1) / static_cast<double>(n + 1)) * raw(n, k);
  double big = G.normalized.size() ? G.normalized.cwiseAbs().maxCoeff() : 0.0;
  double sym = 0.0;
  const Eigen::Index m = std::min(raw.rows(), raw.cols());
  for (Eigen::Index n = 0; n < m; ++n)
    for (Eigen::Index k = 0; k < n; ++k) sym = std::max(sym, std::abs(G.normalized(n, k) - G.normalized(k, n)));
  G.symmetry_error = sym / std::max(1.0, big);
  return G;
}

GrunskyMatrix grunsky_matrix(const UnivalentMap& map, int N, const GrunskyOptions& opt) {
  GrunskyCoefficients gc = grunsky_coeffs(map, N, N, opt);
  GrunskyMatrix G = grunsky_from_raw(gc.b);
  G.residue_error = gc.residue_error;
  G.alias_error = gc.samples.alias_error;
  // rounding in the tail read grows like eps r_s^{n+k}
  G.symmetry_tol = std::max(1e-9, 100.0 * kEps * std::pow(opt.r_s, 2 * N));
  if (G.symmetry_error > G.symmetry_tol) {
    std::ostringstream os;
    os << "normalized Grunsky matrix is not symmetric: defect " << G.symmetry_error;
    throw Error(ErrorKind::Consistency, os.str());
  }
  return G;
}

std::string GrunskyMatrix::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  std::vector<double> re, im;
  for (Eigen::Index n = 0; n < normalized.rows(); ++n)
    for (Eigen::Index k = 0; k < normalized.cols(); ++k) {
      re.push_back(normalized(n, k).real());
      im.push_back(normalized(n, k).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

NormReport grunsky_norm_report(const GrunskyMatrix& G, bool svd_check) {
  NormReport r;
  PowerResult p = top_singular_value(G.normalized, 1e-12);
  r.norm = p.value;
  r.iterations = p.iterations;
  r.converged = p.converged;
  if (svd_check && G.N <= 64 && G.normalized.size() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G.normalized);
    r.svd_norm = svd.singularValues()(0);
  }
  return r;
}

double grunsky_norm(const GrunskyMatrix& G) {
  NormReport r = grunsky_norm_report(G, true);
  if (r.svd_norm && std::abs(*r.svd_norm - r.norm) > 1e-8 * std::max(1.0, r.norm)) {
    std::ostringstream os;
    os << "power iteration " << r.norm << " disagrees with SVD " << *r.svd_norm;
    throw Error(ErrorKind::Consistency, os.str());
  }
  return r.norm;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Quasicircle: return "quasicircle";
    case Verdict::Indeterminate: return "indeterminate";
    case Verdict::NonQuasicircleTrend: return "non-quasicircle-trend";
  }
  return "unknown";
}

std::string Classification::to_json() const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  j["N"] = N;
  j["delta"] = delta;
  j["norm_N"] = norm_N;
  j["norm_half"] = norm_half;
  j["monotone"] = monotone;
  nlohmann::json tr = nlohmann::json::array();
  for (auto [n, v] : trace) tr.push_back({n, v});
  j["trace"] = tr;
  return j.dump();
}

Classification classify_quasicircle(const UnivalentMap& map, int N, double delta, const GrunskyOptions& opt) {
  if (N < 2) throw Error(ErrorKind::Config, "classifier needs N >= 2");
  UnivalenceReport ur = univalence_check(map);
  if (!ur.pass) throw Error(ErrorKind::Domain, "map fails the univalence screen: " + ur.reason);
  GrunskyCoefficients gc = grunsky_coeffs(map, N, N, opt);
  GrunskyMatrix full = grunsky_from_raw(gc.b);
  std::vector<int> sizes;
  for (int n = N; n >= 1; n /= 2) sizes.push_back(n);
  if (std::find(sizes.begin(), sizes.end(), N / 2) == sizes.end()) sizes.push_back(N / 2);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  Classification c;
  c.N = N;
  c.delta = delta;
  for (int n : sizes) {
    GrunskyMatrix sub = grunsky_from_raw(full.raw.topLeftCorner(n, n));
    double v = grunsky_norm(sub);
    if (!c.trace.empty() && v < c.trace.back().second - 1e-12) c.monotone = false;
    c.trace.emplace_back(n, v);
    if (n == N) c.norm_N = v;
    if (n == N / 2) c.norm_half = v;
  }
  double growth = c.norm_N - c.norm_half;
  if (growth >= delta / 10.0)
    c.verdict = Verdict::NonQuasicircleTrend;
  else if (c.norm_N < 1.0 - delta - 1e-9)
    c.verdict = Verdict::Quasicircle;
  else
    c.verdict = Verdict::Indeterminate;
  return c;
}

std::pair<double, double> weak_grunsky_form(const GrunskyMatrix& G, const CVec& hbar) {
  const Eigen::Index m = std::min<Eigen::Index>(G.normalized.rows(), static_cast<Eigen::Index>(hbar.size()));
  Eigen::VectorXcd x(m);
  for (Eigen::Index n = 0; n < m; ++n) x(n) = std::sqrt(static_cast<double>(n + 1)) * hbar[static_cast<std::size_t>(n)];
  cplx form = (x.transpose() * G.normalized.topLeftCorner(m, m) * x)(0, 0);
  return {std::abs(form), x.squaredNorm()};
}

FaberSeries::FaberSeries(const UnivalentMap& map, const CVec& hbar, std::optional<cplx> q, int tail)
    : map_(map), h_(hbar) {
  const int m = static_cast<int>(hbar.size());
  if (m < 1) throw Error(ErrorKind::Config, "Faber data needs at least one coefficient");
  if (tail <= 0) tail = std::max(64, 4 * m);
  gc_ = grunsky_coeffs(map, m, tail);
  offsets_.assign(static_cast<std::size_t>(m), cplx(0.0));
  if (q || infinity_in_target(gc_.samples)) {
    cplx v = q ? gc_.samples.form.coord(*q) : cplx(0.0);
    offsets_ = faber_values(gc_, v);
  }
  const std::size_t M = gc_.M;
  S_.assign(M, cplx(0.0));
  for (int n = 1; n <= m; ++n)
    for (std::size_t j = 0; j < M; ++j) S_[j] += h_[static_cast<std::size_t>(n - 1)] * gc_.F[static_cast<std::size_t>(n)][j];
  // coefficient k read on |z| = r_s carries FFT noise of size eps max|F_n| r_s^k
  double level = 0.0;
  for (int n = 1; n <= m; ++n) {
    double fmax = 0.0;
    for (auto v : gc_.F[static_cast<std::size_t>(n)]) fmax = std::max(fmax, std::abs(v));
    level += std::abs(h_[static_cast<std::size_t>(n - 1)]) * fmax;
  }
  tail_.assign(static_cast<std::size_t>(gc_.K), cplx(0.0));
  for (int k = 1; k <= gc_.K; ++k) {
    cplx a = 0.0;
    for (int n = 0; n < m; ++n) a += h_[static_cast<std::size_t>(n)] * gc_.b(n, k - 1);
    double floor = 100.0 * std::numeric_limits<double>::epsilon() * level * std::pow(gc_.samples.r_s, k);
    tail_[static_cast<std::size_t>(k - 1)] = std::abs(a) < floor ? cplx(0.0) : a;
  }
  boundary_ = read_G(gc_.samples.form, circle(1024, 1.0));
}

bool FaberSeries::in_target(cplx w) const {
  try {
    cplx v = gc_.samples.form.coord(w);
    return winding(boundary_, v) == 1;
  } catch (const Error&) {
    return false;
  }
}

cplx FaberSeries::operator()(cplx w) const {
  if (!in_target(w)) throw Error(ErrorKind::Domain, "Faber series evaluated outside its target domain");
  const ExteriorSamples& es = gc_.samples;
  cplx v = es.form.coord(w);
  const std::size_t M = S_.size();
  CVec t(M);
  for (std::size_t j = 0; j < M; ++j) t[j] = S_[j] * es.dG[j] * es.z[j] / (es.G[j] - v);
  cplx s = pairwise_sum(t) / static_cast<double>(M);
  for (std::size_t n = 0; n < h_.size(); ++n) s -= h_[n] * offsets_[n];
  return s;
}

cplx FaberSeries::derivative(cplx w) const {
  if (!in_target(w)) throw Error(ErrorKind::Domain, "Faber series evaluated outside its target domain");
  const ExteriorSamples& es = gc_.samples;
  cplx v = es.form.coord(w);
  const std::size_t M = S_.size();
  CVec t(M);
  for (std::size_t j = 0; j < M; ++j) {
    cplx d = es.G[j] - v;
    t[j] = S_[j] * es.dG[j] * es.z[j] / (d * d);
  }
  return pairwise_sum(t) / static_cast<double>(M) * es.form.coord.deriv(w);
}

cplx FaberSeries::pulled(cplx s) const {
  cplx out = 0.0;
  for (std::size_t n = 0; n < h_.size(); ++n)
    out += h_[n] * (std::pow(s, static_cast<int>(n + 1)) - offsets_[n]);
  cplx si = 1.0 / s, tailsum = 0.0;
  for (int k = gc_.K; k >= 1; --k) tailsum = (tailsum + tail_[static_cast<std::size_t>(k - 1)]) * si;
  return out + tailsum;
}

cplx FaberSeries::pulled_derivative(cplx s) const {
  cplx out = 0.0;
  for (std::size_t n = 0; n < h_.size(); ++n)
    out += h_[n] * static_cast<double>(n + 1) * std::pow(s, static_cast<int>(n));
  for (int k = 1; k <= gc_.K; ++k)
    out -= static_cast<double>(k) * tail_[static_cast<std::size_t>(k - 1)] * std::pow(s, -k - 1);
  return out;
}

FaberSeries faber_apply(const UnivalentMap& map, const CVec& hbar, std::optional<cplx> q, int tail) {
  return FaberSeries(map, hbar, q, tail);
}

FaberInverse faber_inverse(const UnivalentMap& map, const std::function<cplx(cplx)>& H, int N,
                           const ExtrapolationSchedule& sched) {
  sched.validate();
  ExteriorForm ef = exterior_form(map);
  bool interior = ef.interior_convention;
  if (interior && map.side() != Side::Interior)
    throw Error(ErrorKind::Domain, "Faber inverse needs an interior map or an exterior map with a pole");
  const std::size_t M = std::max<std::size_t>(256, next_pow2(static_cast<std::size_t>(8 * N)));
  std::vector<CVec> rows;
  for (double d : sched.deltas) {
    double r = interior ? 1.0 + d : 1.0 - d;
    CVec z = circle(M, r), vals(M);
    for (std::size_t j = 0; j < M; ++j) vals[j] = H(map.eval_ext(z[j]));
    CVec c = fft::coefficients(vals, N, r);
    CVec h(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) h[static_cast<std::size_t>(n - 1)] = interior ? c[N - n] : c[N + n];
    rows.push_back(std::move(h));
  }
  ExtrapolatedVec e = extrapolate(sched.deltas, rows, sched.order);
  FaberInverse out{e.value, e.error};
  if (e.error > sched.tol * std::max(1.0, max_abs(e.value))) {
    std::ostringstream os;
    os << "boundary limit of the Faber coefficients did not settle, estimate " << e.error;
    throw Error(ErrorKind::Regularity, os.str());
  }
  return out;
}

double faber_energy(const GrunskyCoefficients& gc, const CVec& hbar, int from) {
  const int m = std::min(static_cast<int>(hbar.size()), gc.N);
  double e = 0.0;
  for (int n = std::max(from, 1); n <= m; ++n) e += n * std::norm(hbar[static_cast<std::size_t>(n - 1)]);
  for (int k = 1; k <= gc.K; ++k) {
    cplx a = 0.0;
    for (int n = std::max(from, 1); n <= m; ++n) a += hbar[static_cast<std::size_t>(n - 1)] * gc.b(n - 1, k - 1);
    e -= k * std::norm(a);
  }
  return e;
}

EnergyCheck energy_identity_check(const UnivalentMap& map, const CVec& hbar, const ExtrapolationSchedule& sched) {
  sched.validate();
  const int m = static_cast<int>(hbar.size());
  FaberSeries fs(map, hbar, std::nullopt, std::max(64, 8 * m));
  bool interior = fs.interior_convention();
  if (interior && map.side() != Side::Interior)
    throw Error(ErrorKind::Domain, "energy check needs an interior map or an exterior map with a pole");
  const std::size_t M = std::max<std::size_t>(512, next_pow2(static_cast<std::size_t>(32 * m)));
  CVec lhs_vals;
  for (double d : sched.deltas) {
    double r = interior ? 1.0 + d : 1.0 - d;
    CVec z = circle(M, r), t(M);
    for (std::size_t j = 0; j < M; ++j) {
      cplx w = map.eval_ext(z[j]);
      cplx dw = map.deriv_ext(z[j]) * z[j];
      t[j] = std::conj(fs(w)) * fs.derivative(w) * dw;
    }
    // (1/2 pi i) contour integral with dw = f' i z dtheta
    double v = (pairwise_sum(t) / static_cast<double>(M)).real();
    lhs_vals.push_back(interior ? -v : v);
  }
  Extrapolated e = extrapolate(sched.deltas, lhs_vals, sched.order);
  EnergyCheck out;
  out.lhs = e.value.real();
  out.lhs_error = e.error;
  out.rhs = faber_energy(fs.grunsky(), hbar);
  out.residual = std::abs(out.lhs - out.rhs);
  if (out.lhs_error > 1e-6 * std::max(1.0, std::abs(out.lhs))) {
    std::ostringstream os;
    os << "energy contour quadrature did not converge, estimate " << out.lhs_error;
    throw Error(ErrorKind::Tolerance, os.str());
  }
  return out;
}

namespace {
cplx k0_direct(const UnivalentMap& f, cplx w, cplx z) {
  cplx df = f.eval_ext(w) - f.eval_ext(z);
  cplx e = w - z;
  return f.deriv_ext(w) * f.deriv_ext(z) / (df * df) - 1.0 / (e * e);
}
}  // namespace

cplx schiffer_K0(const UnivalentMap& f, cplx w, cplx z) {
  cplx e = w - z;
  if (std::abs(e) >= 1e-3) return k0_direct(f, w, z);
  // removable singularity: 4-term Taylor series in e from a 16-point circle of radius 0.05
  constexpr int P = 16;
  constexpr double rho = 0.05;
  cplx c[4] = {0.0, 0.0, 0.0, 0.0};
  for (int j = 0; j < P; ++j) {
    cplx u = std::exp(kI * (2.0 * kPi * j / P));
    cplx v = k0_direct(f, z + rho * u, z);
    cplx up = 1.0;
    for (int k = 0; k < 4; ++k) {
      c[k] += v / up;
      up *= u;
    }
  }
  cplx s = 0.0;
  for (int k = 3; k >= 0; --k) s = s * (e / rho) + c[k] / static_cast<double>(P);
  return s;
}

cplx bergman_schiffer_kernel(const UnivalentMap& f, cplx w, cplx z) {
  return schiffer_K0(f, w, z) / (2.0 * kPi * kI);
}

cplx kernel_column(const UnivalentMap& f, int n, cplx z, int gl, int nt) {
  std::vector<double> rx, rw;
  gauss_legendre(gl, 0.0, 1.0, rx, rw);
  CVec terms;
  terms.reserve(static_cast<std::size_t>(gl * nt));
  const double dth = 2.0 * kPi / nt;
  for (int i = 0; i < gl; ++i)
    for (int j = 0; j < nt; ++j) {
      cplx w = rx[static_cast<std::size_t>(i)] * std::exp(kI * (dth * j));
      terms.push_back(schiffer_K0(f, w, z) * std::pow(std::conj(w), n - 1) * rx[static_cast<std::size_t>(i)] *
                      rw[static_cast<std::size_t>(i)] * dth);
    }
  return pairwise_sum(terms) / kPi;
}

cplx kernel_column_from_grunsky(const GrunskyCoefficients& gc, int n, cplx z) {
  cplx s = 0.0;
  for (int m = gc.K; m >= 1; --m)
    s = s * z + static_cast<double>(m) / n * gc.b(n - 1, m - 1);
  return -s;
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> c;
  c.push_back({"identity", UnivalentMap::identity()});
  c.push_back({"quadratic_0.4", UnivalentMap::taylor({1.0, 0.4})});
  c.push_back({"cubic", UnivalentMap::taylor({1.0, 0.2, 0.05})});
  for (double t : {0.2, 0.5, 0.8, 0.95}) {
    std::ostringstream os;
    os << "joukowski_" << t;
    c.push_back({os.str(), UnivalentMap::joukowski(t)});
  }
  c.push_back({"cusp_0.5", UnivalentMap::taylor({1.0, 0.5}, false)});
  c.push_back({"moebius_joukowski_0.5", moebius_compose(Moebius{0.0, 1.0, 1.0, -3.0}, UnivalentMap::joukowski(0.5))});
  c.push_back({"moebius_quadratic_0.4",
               moebius_compose(Moebius{0.0, 1.0, 1.0, cplx(0.0, 0.2)}, UnivalentMap::taylor({1.0, 0.4}))});
  return c;
}

}  // namespace quasikit
