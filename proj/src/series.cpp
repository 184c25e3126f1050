#include "quasikit/series.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "quasikit/fft.hpp"

namespace quasikit {

cplx LaurentSeries::eval(cplx z) const {
  cplx s = 0.0;
  for (int n = n_max; n >= 0; --n) s = s * z + (*this)[n];
  if (n_min < 0) {
    cplx zi = 1.0 / z, t = 0.0;
    for (int n = n_min; n <= -1; ++n) t = (t + (*this)[n]) * zi;
    s += t;
  }
  return s;
}

cplx LaurentSeries::derivative(cplx z) const {
  cplx s = 0.0;
  for (int n = n_min; n <= n_max; ++n)
    if (n != 0) s += static_cast<double>(n) * c[n - n_min] * std::pow(z, n - 1);
  return s;
}

cplx FourierBoundaryData::eval(double theta) const {
  cplx s = 0.0;
  for (int n = -N; n <= N; ++n) s += c[n + N] * std::exp(kI * (n * theta));
  return s;
}

cplx FourierBoundaryData::derivative(double theta) const {
  cplx s = 0.0;
  for (int n = -N; n <= N; ++n) s += kI * static_cast<double>(n) * c[n + N] * std::exp(kI * (n * theta));
  return s;
}

double FourierBoundaryData::energy() const {
  double e = 0.0;
  for (int n = -N; n <= N; ++n) e += std::abs(n) * std::norm(c[n + N]);
  return e;
}

bool FourierBoundaryData::is_real(double tol) const {
  for (int n = 0; n <= N; ++n)
    if (std::abs(c[N - n] - std::conj(c[N + n])) > tol) return false;
  return true;
}

cplx HarmonicDiskFunction::eval(cplx z) const {
  cplx s = 0.0, zb = std::conj(z), t = 0.0;
  for (int n = N; n >= 0; --n) s = s * z + holo[n];
  for (int n = N; n >= 1; --n) t = (t + antiholo[n]) * zb;
  return s + t;
}

cplx HarmonicDiskFunction::dz(cplx z) const {
  cplx s = 0.0;
  for (int n = N; n >= 1; --n) s = s * z + static_cast<double>(n) * holo[n];
  return s;
}

cplx HarmonicDiskFunction::dzbar(cplx z) const {
  cplx s = 0.0, zb = std::conj(z);
  for (int n = N; n >= 1; --n) s = s * zb + static_cast<double>(n) * antiholo[n];
  return s;
}

double dirichlet_energy(const HarmonicDiskFunction& h) {
  double e = 0.0;
  for (int n = 1; n <= h.N; ++n) e += n * (std::norm(h.holo[n]) + std::norm(h.antiholo[n]));
  return e;
}

double douglas_raw(const FourierBoundaryData& u, std::size_t M) {
  if (M < static_cast<std::size_t>(4 * u.N))
    throw Error(ErrorKind::Resolution, "Douglas grid M must be at least 4N");
  const double dth = 2.0 * kPi / static_cast<double>(M);
  CVec vals(M), der(M), nodes(M);
  for (std::size_t j = 0; j < M; ++j) {
    double th = dth * static_cast<double>(j);
    vals[j] = u.eval(th);
    der[j] = u.derivative(th);
    nodes[j] = std::exp(kI * th);
  }
  std::vector<double> rows(M), row(M);
  for (std::size_t j = 0; j < M; ++j) {
    for (std::size_t k = 0; k < M; ++k) {
      if (k == j)
        row[k] = std::norm(der[j]);
      else
        row[k] = std::norm(vals[j] - vals[k]) / std::norm(nodes[j] - nodes[k]);
    }
    rows[j] = pairwise_sum(row.data(), M);
  }
  return pairwise_sum(rows.data(), M) * dth * dth;
}

double douglas_kappa() {
  static const double kappa = [] {
    FourierBoundaryData e1(1);
    e1.at(1) = 1.0;
    return 1.0 / douglas_raw(e1, 64);
  }();
  return kappa;
}

double douglas_energy(const FourierBoundaryData& u, std::size_t M) {
  return douglas_kappa() * douglas_raw(u, M);
}

HarmonicDiskFunction harmonic_extension(const FourierBoundaryData& u) {
  HarmonicDiskFunction h(u.N);
  for (int n = 0; n <= u.N; ++n) h.holo[n] = u[n];
  for (int n = 1; n <= u.N; ++n) h.antiholo[n] = u[-n];
  return h;
}

FourierBoundaryData boundary_trace(const HarmonicDiskFunction& h) {
  FourierBoundaryData u(h.N);
  for (int n = 0; n <= h.N; ++n) u.at(n) = h.holo[n];
  for (int n = 1; n <= h.N; ++n) u.at(-n) = h.antiholo[n];
  return u;
}

HarmonicDiskFunction project(const HarmonicDiskFunction& h, Part part, Normalization norm) {
  HarmonicDiskFunction out(h.N);
  if (part == Part::Holo) {
    for (int n = 1; n <= h.N; ++n) out.holo[n] = h.holo[n];
    if (norm == Normalization::AntiholoVanishes) out.holo[0] = h.holo[0];
  } else {
    for (int n = 1; n <= h.N; ++n) out.antiholo[n] = h.antiholo[n];
    // constants are stored in holo[0] regardless of which summand owns them
    if (norm == Normalization::HoloVanishes) out.holo[0] = h.holo[0];
  }
  return out;
}

namespace {
LaurentSeries read_coefficients(const CVec& samples, int n_min, int n_max, double r) {
  const std::size_t M = samples.size();
  int K = std::max(std::abs(n_min), std::abs(n_max));
  if (M < static_cast<std::size_t>(2 * K + 1))
    throw Error(ErrorKind::Resolution, "composition grid too small for requested range");
  CVec all = fft::coefficients(samples, K, r);
  LaurentSeries out(n_min, n_max);
  for (int n = n_min; n <= n_max; ++n) out.at(n) = all[n + K];
  return out;
}

cplx checked_outer(const LaurentSeries& outer, cplx w, const Annulus& dom) {
  double a = std::abs(w);
  bool need_nonzero = outer.n_min < 0;
  if (a > dom.rmax || a < dom.rmin || (need_nonzero && a == 0.0))
    throw Error(ErrorKind::Domain, "sampling circle leaves the outer series' domain of validity");
  return outer.eval(w);
}
}  // namespace

LaurentSeries compose_series(const LaurentSeries& outer, const LaurentSeries& inner, int n_min,
                             int n_max, double r, std::size_t M, Annulus outer_domain) {
  GridSamples g;
  g.values.resize(M);
  for (std::size_t j = 0; j < M; ++j) g.values[j] = inner.eval(r * std::exp(kI * g.theta(j)));
  return compose_series(outer, g, n_min, n_max, r, outer_domain);
}

LaurentSeries compose_series(const LaurentSeries& outer, const GridSamples& inner, int n_min,
                             int n_max, double r, Annulus outer_domain) {
  CVec vals(inner.M());
  for (std::size_t j = 0; j < inner.M(); ++j)
    vals[j] = checked_outer(outer, inner.values[j], outer_domain);
  return read_coefficients(vals, n_min, n_max, r);
}

cplx poisson_eval(const FourierBoundaryData& u, cplx z) {
  double a = std::abs(z);
  if (!(a < 1.0)) throw Error(ErrorKind::Domain, "Poisson evaluation needs |z| < 1");
  std::size_t M = std::max(default_grid(u.N), next_pow2(static_cast<std::size_t>(std::ceil(40.0 / (1.0 - a)))));
  M = std::min<std::size_t>(M, std::size_t{1} << 22);
  CVec vals = fft::synthesize(u.c, u.N, M);
  CVec terms(M);
  for (std::size_t j = 0; j < M; ++j) {
    cplx e = std::exp(kI * (2.0 * kPi * static_cast<double>(j) / static_cast<double>(M)));
    terms[j] = vals[j] * ((1.0 - a * a) / std::norm(e - z));
  }
  return pairwise_sum(terms) / static_cast<double>(M);
}

FourierBoundaryData add(const FourierBoundaryData& a, const FourierBoundaryData& b, double* loss) {
  int N = std::min(a.N, b.N);
  FourierBoundaryData out(N);
  double lost = 0.0;
  for (int n = -N; n <= N; ++n) out.at(n) = a[n] + b[n];
  const FourierBoundaryData& big = a.N > b.N ? a : b;
  for (int n = N + 1; n <= big.N; ++n) lost += n * (std::norm(big[n]) + std::norm(big[-n]));
  if (loss) *loss = lost;
  return out;
}

FourierBoundaryData scale(const FourierBoundaryData& a, cplx s) {
  FourierBoundaryData out = a;
  for (auto& v : out.c) v *= s;
  return out;
}

GridSamples sample(const FourierBoundaryData& u, std::size_t M) {
  GridSamples g;
  g.values = fft::synthesize(u.c, u.N, M);
  return g;
}

FourierBoundaryData from_samples(const GridSamples& g, int N) {
  FourierBoundaryData u(N);
  u.c = fft::coefficients(g.values, N);
  return u;
}

std::size_t default_grid(int N) { return next_pow2(static_cast<std::size_t>(4 * N + 1)); }

namespace {
nlohmann::json series_json(int lo, int hi, const CVec& c) {
  nlohmann::json j;
  j["n_min"] = lo;
  j["n_max"] = hi;
  std::vector<double> re, im;
  for (auto v : c) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}
}  // namespace

std::string to_json(const LaurentSeries& s) { return series_json(s.n_min, s.n_max, s.c).dump(); }
std::string to_json(const FourierBoundaryData& u) { return series_json(-u.N, u.N, u.c).dump(); }

LaurentSeries series_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  LaurentSeries s(j.at("n_min").get<int>(), j.at("n_max").get<int>());
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != s.c.size() || im.size() != s.c.size())
    throw Error(ErrorKind::Config, "series JSON length does not match n_min..n_max");
  for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] = cplx(re[i], im[i]);
  return s;
}

FourierBoundaryData fourier_from_json(const std::string& text) {
  LaurentSeries s = series_from_json(text);
  int N = std::max(std::abs(s.n_min), std::abs(s.n_max));
  FourierBoundaryData u(N);
  for (int n = s.n_min; n <= s.n_max; ++n) u.at(n) = s[n];
  return u;
}

void write_grid_csv(std::ostream& os, const GridSamples& g) {
  os << "theta,re,im\n";
  os.precision(17);
  for (std::size_t j = 0; j < g.M(); ++j)
    os << g.theta(j) << ',' << g.values[j].real() << ',' << g.values[j].imag() << '\n';
}

GridSamples read_grid_csv(std::istream& is) {
  GridSamples g;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    g.values.emplace_back(std::stod(b), std::stod(c));
  }
  return g;
}

}  // namespace quasikit
