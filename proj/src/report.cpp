#include "quasikit/report.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <regex>
#include <sstream>

#include "quasikit/cauchy_schiffer.hpp"
#include "quasikit/faber_grunsky.hpp"
#include "quasikit/fft.hpp"
#include "quasikit/series.hpp"

namespace quasikit {

const char* version() { return "0.1.0"; }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::Config, "expected a complex number, got " + j.dump());
}

Json complex_to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

CVec cvec_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Config, "expected an array of complex numbers");
  CVec v;
  for (const auto& x : j) v.push_back(complex_from_json(x));
  return v;
}

Json cvec_to_json(const CVec& v) {
  Json a = Json::array();
  for (auto z : v) a.push_back(complex_to_json(z));
  return a;
}

UnivalentMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(ErrorKind::Config, "map needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") {
    std::string side = j.value("side", "interior");
    return UnivalentMap::identity(side == "exterior" ? Side::Exterior : Side::Interior);
  }
  if (kind == "taylor") return UnivalentMap::taylor(cvec_from_json(j.at("coeffs")), j.value("jordan", true));
  if (kind == "joukowski") return UnivalentMap::joukowski(complex_from_json(j.at("t")), j.value("jordan", true));
  if (kind == "moebius") {
    const Json& m = j.at("m");
    Moebius M{complex_from_json(m.at("a")), complex_from_json(m.at("b")), complex_from_json(m.at("c")),
              complex_from_json(m.at("d"))};
    return moebius_compose(M, map_from_json(j.at("base")));
  }
  if (kind == "inverted") return UnivalentMap::inverted(map_from_json(j.at("base")));
  if (kind == "interior") return interior_form(map_from_json(j.at("base")));
  if (kind == "catalog") {
    std::string name = j.at("name").get<std::string>();
    for (auto& e : catalog())
      if (e.name == name) return e.map;
    throw Error(ErrorKind::Config, "unknown catalog map " + name);
  }
  throw Error(ErrorKind::Config, "unknown map kind " + kind);
}

ExtrapolationSchedule schedule_from_json(const Json& j) {
  ExtrapolationSchedule s;
  if (j.is_null()) {
    s = ExtrapolationSchedule::standard();
  } else if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (name == "standard")
      s = ExtrapolationSchedule::standard();
    else if (name == "deep")
      s = ExtrapolationSchedule::deep();
    else if (name == "coarse")
      s = ExtrapolationSchedule::coarse();
    else if (name == "collar")
      s = ExtrapolationSchedule::collar();
    else
      throw Error(ErrorKind::Config, "unknown schedule " + name);
  } else {
    s.deltas = j.at("deltas").get<std::vector<double>>();
    s.order = j.value("order", static_cast<int>(s.deltas.size()) - 1);
    s.tol = j.value("tol", 1e-9);
  }
  s.validate();
  return s;
}

CircleHomeo homeo_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return CircleHomeo::identity();
  if (kind == "rotation") return CircleHomeo::rotation(j.at("alpha").get<double>());
  if (kind == "sine") return CircleHomeo::sine(j.at("a").get<double>());
  if (kind == "automorphism") return CircleHomeo::automorphism(complex_from_json(j.at("a")), j.value("rot", 0.0));
  throw Error(ErrorKind::Config, "unknown circle map kind " + kind);
}

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Series: return "series";
    case Suite::Maps: return "maps";
    case Suite::FaberGrunsky: return "faber-grunsky";
    case Suite::Cauchy: return "cauchy-schiffer";
    case Suite::Transmission: return "transmission";
  }
  return "?";
}

// ---- configuration

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config " + path);
  try {
    return from_json(Json::parse(in));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json(Json j) {
  if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  ExperimentConfig c;
  c.j_ = std::move(j);
  return c;
}

void ExperimentConfig::set(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::Config, "expected key=value, got " + assignment);
  std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const Json::exception&) {
    value = text;
  }
  Json* node = &j_;
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    Json& next = (*node)[parts[i]];
    if (!next.is_object()) next = Json::object();
    node = &next;
  }
  (*node)[parts.back()] = value;
}

void ExperimentConfig::validate() const {
  if (!j_.contains("map")) throw Error(ErrorKind::Config, "config needs a map");
  if (N() < 2) throw Error(ErrorKind::Config, "truncation N must be at least 2");
  if (j_.contains("tolerances")) {
    for (auto& [k, v] : j_.at("tolerances").items())
      if (!v.is_number() || !(v.get<double>() > 0.0))
        throw Error(ErrorKind::Config, "tolerance " + k + " must be positive");
  }
  schedule();
  if (j_.contains("delta") && !(number("delta", 0.02) > 0.0 && number("delta", 0.02) < 1.0))
    throw Error(ErrorKind::Config, "delta must lie in (0, 1)");
}

UnivalentMap ExperimentConfig::map() const { return map_from_json(j_.at("map")); }
int ExperimentConfig::N() const { return integer("N", 16); }
ExtrapolationSchedule ExperimentConfig::schedule() const {
  return schedule_from_json(j_.contains("schedule") ? j_.at("schedule") : Json());
}

std::optional<cplx> ExperimentConfig::q() const {
  if (!j_.contains("q") || j_.at("q").is_null()) return std::nullopt;
  if (j_.at("q").is_string() && j_.at("q").get<std::string>() == "infinity") return std::nullopt;
  return complex_from_json(j_.at("q"));
}

double ExperimentConfig::tolerance(const std::string& name, double fallback) const {
  if (j_.contains("tolerances") && j_.at("tolerances").contains(name)) return j_.at("tolerances").at(name).get<double>();
  return fallback;
}

double ExperimentConfig::number(const std::string& key, double fallback) const {
  if (!j_.contains(key)) return fallback;
  if (!j_.at(key).is_number()) throw Error(ErrorKind::Config, key + " must be a number");
  return j_.at(key).get<double>();
}

int ExperimentConfig::integer(const std::string& key, int fallback) const {
  if (!j_.contains(key)) return fallback;
  if (!j_.at(key).is_number_integer()) throw Error(ErrorKind::Config, key + " must be an integer");
  return j_.at(key).get<int>();
}

// ---- report

void RunReport::add(const std::string& name, Suite suite, double value, double tolerance) {
  residuals.push_back({name, suite, value, tolerance, std::isfinite(value) && value <= tolerance});
}

bool RunReport::passed() const {
  for (const auto& r : residuals)
    if (!r.pass) return false;
  return true;
}

int RunReport::exit_code() const {
  for (const auto& r : residuals)
    if (!r.pass) return 10 + static_cast<int>(r.suite);
  return 0;
}

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["version"] = version;
  j["config"] = config;
  j["kappa_D"] = kappa_D;
  j["quadrature"] = quadrature;
  j["result"] = result;
  Json rows = Json::array();
  for (const auto& r : residuals)
    rows.push_back({{"name", r.name}, {"suite", to_string(r.suite)}, {"value", r.value}, {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  j["residuals"] = rows;
  j["pass"] = passed();
  j["wall_clock"] = wall_clock;
  return j;
}

void RunReport::write(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream(std::filesystem::path(dir) / "report.json") << to_json().dump(2) << '\n';
  std::ostringstream rs;
  rs.precision(17);
  rs << "name,suite,value,tolerance,pass\n";
  for (const auto& r : residuals)
    rs << r.name << ',' << to_string(r.suite) << ',' << r.value << ',' << r.tolerance << ',' << (r.pass ? 1 : 0) << '\n';
  std::ofstream(std::filesystem::path(dir) / "residuals.csv") << rs.str();
  for (const auto& [name, text] : tables) std::ofstream(std::filesystem::path(dir) / name) << text;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"faber", "grunsky", "classify", "jump", "approx",
                                          "transmit", "verify", "energy"};
  return c;
}

namespace {

std::string csv_matrix(const Eigen::MatrixXcd& m) {
  std::ostringstream os;
  os.precision(17);
  os << "n,k,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      os << i + 1 << ',' << k + 1 << ',' << m(i, k).real() << ',' << m(i, k).imag() << '\n';
  return os.str();
}

std::string csv_coeffs(const std::string& index, int first, const CVec& v) {
  std::ostringstream os;
  os.precision(17);
  os << index << ",re,im\n";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << first + static_cast<int>(i) << ',' << v[i].real() << ',' << v[i].imag() << '\n';
  return os.str();
}

// Boundary data from "boundary" (c_{-n..n}) or a seeded random trigonometric polynomial of degree N.
FourierBoundaryData boundary_from(const ExperimentConfig& cfg) {
  const Json& j = cfg.json();
  if (j.contains("boundary")) {
    CVec c = cvec_from_json(j.at("boundary"));
    if (c.size() % 2 == 0) throw Error(ErrorKind::Config, "boundary needs 2n+1 coefficients c_{-n..n}");
    FourierBoundaryData u(static_cast<int>(c.size() / 2));
    u.c = c;
    return u;
  }
  const int N = cfg.integer("degree", 8);
  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.integer("seed", 1)));
  std::normal_distribution<double> g;
  FourierBoundaryData u(N);
  for (int n = -N; n <= N; ++n) u.at(n) = cplx(g(rng), g(rng)) / (1.0 + std::abs(n));
  return u;
}

GrunskyOptions grunsky_options(const ExperimentConfig& cfg) {
  GrunskyOptions opt;
  opt.r_s = cfg.number("r_s", 1.25);
  opt.q = cfg.q();
  if (cfg.json().contains("quadrature")) opt.M = cfg.json().at("quadrature").value("grunsky_M", std::size_t{0});
  return opt;
}

UnivalentMap working_interior(const UnivalentMap& f) { return f.side() == Side::Interior ? f : interior_form(f); }

double max_on_circle(const UnivalentMap& f, double r) {
  double m = 0.0;
  for (int j = 0; j < 256; ++j) m = std::max(m, std::abs(f.eval_ext(r * std::exp(kI * (2.0 * kPi * j / 256)))));
  return m;
}

CVec ring(double R, int n, double phase) {
  CVec p;
  for (int k = 0; k < n; ++k) p.push_back(R * std::exp(kI * (2.0 * kPi * k / n + phase)));
  return p;
}

double max_residual(const VerifyReport& r) { return r.max_residual; }

// ---- commands

void cmd_faber(const ExperimentConfig& cfg, RunReport& rep) {
  UnivalentMap f = cfg.map();
  const int N = cfg.N();
  FaberTable t = faber_polynomials(f, N, cfg.number("r_s", 1.25));
  GrunskyCoefficients gc = grunsky_coeffs(f, N, 0, grunsky_options(cfg));
  rep.result["faber"] = Json::parse(t.to_json());
  rep.result["condition"] = t.condition;
  rep.quadrature["grunsky_M"] = gc.M;
  rep.add("faber_residue", Suite::FaberGrunsky, gc.residue_error, cfg.tolerance("faber_residue", 1e-8));
  std::ostringstream os;
  os.precision(17);
  os << "n,j,re,im\n";
  for (int n = 1; n <= N; ++n)
    for (std::size_t k = 0; k < t.polys[static_cast<std::size_t>(n - 1)].size(); ++k) {
      cplx v = t.polys[static_cast<std::size_t>(n - 1)][k];
      os << n << ',' << k << ',' << v.real() << ',' << v.imag() << '\n';
    }
  rep.tables["faber.csv"] = os.str();
}

void cmd_grunsky(const ExperimentConfig& cfg, RunReport& rep) {
  UnivalentMap f = cfg.map();
  const int N = cfg.N();
  GrunskyOptions opt = grunsky_options(cfg);
  GrunskyMatrix G = grunsky_matrix(f, N, opt);
  NormReport nr = grunsky_norm_report(G);
  rep.result["N"] = N;
  rep.result["norm"] = nr.norm;
  rep.result["power_iterations"] = nr.iterations;
  rep.result["converged"] = nr.converged;
  if (nr.svd_norm) rep.result["svd_norm"] = *nr.svd_norm;
  rep.result["matrix"] = Json::parse(G.to_json());
  rep.add("grunsky_symmetry", Suite::FaberGrunsky, G.symmetry_error, cfg.tolerance("grunsky_symmetry", G.symmetry_tol));
  rep.add("faber_residue", Suite::FaberGrunsky, G.residue_error, cfg.tolerance("faber_residue", 1e-8));
  if (nr.svd_norm)
    rep.add("norm_power_vs_svd", Suite::FaberGrunsky, std::abs(nr.norm - *nr.svd_norm), cfg.tolerance("norm_consistency", 1e-8));
  rep.tables["grunsky.csv"] = csv_matrix(G.normalized);
}

void cmd_classify(const ExperimentConfig& cfg, RunReport& rep) {
  UnivalentMap f = cfg.map();
  Classification c = classify_quasicircle(f, cfg.N(), cfg.number("delta", 0.02), grunsky_options(cfg));
  rep.result = Json::parse(c.to_json());
  std::ostringstream os;
  os.precision(17);
  os << "N,norm\n";
  for (auto [n, v] : c.trace) os << n << ',' << v << '\n';
  rep.tables["classify_trace.csv"] = os.str();
}

void cmd_jump(const ExperimentConfig& cfg, RunReport& rep) {
  UnivalentMap f = working_interior(cfg.map());
  FourierBoundaryData u = boundary_from(cfg);
  double tol = cfg.tolerance("jump", 1e-5);
  JumpPair jp = jump_decompose(f, u, cfg.q(), cfg.schedule(), std::numeric_limits<double>::infinity());
  rep.result = Json::parse(jp.to_json());
  rep.result["working_map"] = f.describe();
  rep.quadrature["jump_residual_grid"] = 1024;
  rep.quadrature["jump_read_points"] = 256;
  rep.add("jump_residual", Suite::Cauchy, jp.residual, tol);
  rep.tables["jump_h1.csv"] = csv_coeffs("n", jp.h1.n_min, jp.h1.c);
  rep.tables["jump_h2.csv"] = csv_coeffs("n", 1, jp.h2_faber);
}

void cmd_approx(const ExperimentConfig& cfg, RunReport& rep) {
  UnivalentMap f = working_interior(cfg.map());
  const int N = cfg.N();
  const cplx xi = cfg.json().contains("preimage") ? complex_from_json(cfg.json().at("preimage")) : cplx(0.3);
  const cplx a = f.eval(xi);
  FaberInverse inv = faber_inverse(f, [&](cplx w) { return 1.0 / (w - a); }, N, ExtrapolationSchedule::collar());
  GrunskyCoefficients gc = grunsky_coeffs(f, N, std::max(128, 4 * N));
  // least-squares slope of log |h_n| over coefficients above the noise floor
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  const double floor = 1e-13 * std::abs(inv.h[0]);
  for (int n = 1; n <= N; ++n) {
    double v = std::abs(inv.h[static_cast<std::size_t>(n - 1)]);
    if (v < floor) continue;
    sx += n;
    sy += std::log(v);
    sxx += double(n) * n;
    sxy += n * std::log(v);
    ++cnt;
  }
  double ratio = cnt > 1 ? std::exp((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx)) : 0.0;
  std::vector<double> err;
  int increases = 0;
  std::ostringstream os;
  os.precision(17);
  os << "order,abs_coefficient,dirichlet_error\n";
  for (int n = 1; n <= N; ++n) {
    double e = std::sqrt(std::max(0.0, faber_energy(gc, inv.h, n + 1)));
    // below roundoff of the leading error the sequence carries no information
    if (!err.empty() && !(e < err.back()) && n < N && err.back() > 1e-13 * err.front()) ++increases;
    err.push_back(e);
    os << n << ',' << std::abs(inv.h[static_cast<std::size_t>(n - 1)]) << ',' << e << '\n';
  }
  rep.result["point"] = complex_to_json(a);
  rep.result["preimage"] = complex_to_json(xi);
  rep.result["coefficients"] = cvec_to_json(inv.h);
  rep.result["fitted_ratio"] = ratio;
  rep.result["dirichlet_error"] = err;
  rep.result["working_map"] = f.describe();
  rep.quadrature["grunsky_M"] = gc.M;
  rep.quadrature["grunsky_K"] = gc.K;
  rep.add("faber_inverse_limit", Suite::FaberGrunsky, inv.error, cfg.tolerance("faber_inverse", 1e-8));
  rep.add("dirichlet_error_increases", Suite::FaberGrunsky, increases, 0.0);
  rep.tables["approx.csv"] = os.str();
}

void cmd_transmit(const ExperimentConfig& cfg, RunReport& rep) {
  const int N = cfg.N();
  if (cfg.json().contains("phi")) {
    CircleHomeo phi = homeo_from_json(cfg.json().at("phi"));
    EnergyRatioReport r1 = energy_ratio_report(phi, N), r2 = energy_ratio_report(phi, 2 * N);
    double qs = qs_modulus(phi);
    rep.result["C_hat"] = r1.C_hat;
    rep.result["C_hat_doubled"] = r2.C_hat;
    rep.result["eigen_check"] = r1.eig_check;
    rep.result["qs_modulus"] = qs;
    rep.result["iterations"] = r1.iterations;
    rep.quadrature["energy_grid"] = std::max<std::size_t>(1024, static_cast<std::size_t>(32 * 2 * N));
    rep.add("power_vs_eigensolver", Suite::Transmission, std::abs(r1.C_hat - r1.eig_check), cfg.tolerance("eigen_check", 1e-8));
    rep.add("doubling_change", Suite::Transmission, std::abs(r2.C_hat - r1.C_hat) / r1.C_hat,
            cfg.tolerance("doubling", 0.05));
    std::ostringstream os;
    os.precision(17);
    os << "N,C_hat\n" << N << ',' << r1.C_hat << '\n' << 2 * N << ',' << r2.C_hat << '\n';
    rep.tables["energy_ratio.csv"] = os.str();
    return;
  }
  UnivalentMap f = working_interior(cfg.map());
  CVec c = cfg.json().contains("exterior_laurent") ? cvec_from_json(cfg.json().at("exterior_laurent")) : CVec{1.0};
  auto H = [&](cplx w) {
    cplx s = 0.0, wi = 1.0 / w;
    for (std::size_t k = c.size(); k-- > 0;) s = (s + c[k]) * wi;
    return s;
  };
  ExtrapolationSchedule sched = cfg.schedule();
  TransmitResult t = transmit(f, H, N, sched);
  CollarTransmit ct = transmit_holomorphic(f, [&](cplx w) { return CVec{H(w)}; }, 1, N);
  double agree = 0.0;
  for (int n = -N; n <= N; ++n) agree = std::max(agree, std::abs(t.trace[n] - ct.traces[0][n]));
  rep.result["trace"] = Json::parse(to_json(t.trace));
  rep.result["output_energy"] = t.output_energy;
  rep.result["collar_energy"] = t.collar_energy;
  rep.result["extrapolation_error"] = t.error;
  rep.result["working_map"] = f.describe();
  rep.add("pointwise_vs_collar_trace", Suite::Transmission, agree, cfg.tolerance("transmit", 1e-6));
  std::ostringstream os;
  os.precision(17);
  os << "n,re,im\n";
  for (int n = -N; n <= N; ++n) os << n << ',' << t.trace[n].real() << ',' << t.trace[n].imag() << '\n';
  rep.tables["transmit.csv"] = os.str();
}

void cmd_energy(const ExperimentConfig& cfg, RunReport& rep) {
  FourierBoundaryData u = boundary_from(cfg);
  std::size_t M = 512;
  if (cfg.json().contains("quadrature")) M = cfg.json().at("quadrature").value("douglas_M", std::size_t{512});
  double coeff = u.energy(), dou = douglas_energy(u, M);
  rep.result["coefficient_energy"] = coeff;
  rep.result["douglas_energy"] = dou;
  rep.quadrature["douglas_M"] = M;
  rep.add("douglas_vs_coefficients", Suite::Series, std::abs(dou - coeff) / std::max(coeff, 1e-300),
          cfg.tolerance("douglas", 1e-3));
  if (cfg.json().contains("hbar")) {
    CVec hbar = cvec_from_json(cfg.json().at("hbar"));
    EnergyCheck ec = energy_identity_check(cfg.map(), hbar, cfg.schedule());
    rep.result["faber_energy_contour"] = ec.lhs;
    rep.result["faber_energy_grunsky"] = ec.rhs;
    rep.add("energy_identity", Suite::FaberGrunsky, ec.residual, cfg.tolerance("energy_identity", 1e-6));
  }
}

void cmd_verify(const ExperimentConfig& cfg, RunReport& rep) {
  UnivalentMap f = cfg.map();
  UnivalentMap fi = working_interior(f);
  ExtrapolationSchedule sched = cfg.schedule();
  const int N = cfg.N();
  Json detail;

  // series
  {
    FourierBoundaryData u = boundary_from(cfg);
    FourierBoundaryData back = from_samples(sample(u, default_grid(u.N)), u.N);
    double d = 0.0;
    for (int n = -u.N; n <= u.N; ++n) d = std::max(d, std::abs(back[n] - u[n]));
    rep.add("fft_roundtrip", Suite::Series, d, cfg.tolerance("fft_roundtrip", 1e-13));
    rep.add("douglas_vs_coefficients", Suite::Series, std::abs(douglas_energy(u, 512) - u.energy()) / u.energy(),
            cfg.tolerance("douglas", 1e-3));
  }
  // maps
  {
    UnivalenceReport ur = univalence_check(f);
    rep.add("univalence_screen", Suite::Maps, ur.pass ? 0.0 : 1.0, 0.5);
    double d = 0.0;
    for (cplx xi : ring(0.6, 3, 0.2)) d = std::max(d, std::abs(invert(fi, fi.eval(xi), 0.0) - xi));
    rep.add("inversion", Suite::Maps, d, cfg.tolerance("inversion", 1e-10));
  }
  // faber-grunsky
  {
    GrunskyMatrix G = grunsky_matrix(f, N, grunsky_options(cfg));
    rep.add("grunsky_symmetry", Suite::FaberGrunsky, G.symmetry_error, cfg.tolerance("grunsky_symmetry", G.symmetry_tol));
    rep.add("faber_residue", Suite::FaberGrunsky, G.residue_error, cfg.tolerance("faber_residue", 1e-8));
    detail["grunsky_norm"] = grunsky_norm(G);
    CVec hbar;
    for (int n = 1; n <= 6; ++n) hbar.push_back(cplx(1.0 / n, 0.3 / (n * n)));
    if (!(exterior_form(f).interior_convention && f.side() != Side::Interior)) {
      EnergyCheck ec = energy_identity_check(f, hbar);
      rep.add("energy_identity", Suite::FaberGrunsky, ec.residual, cfg.tolerance("energy_identity", 1e-6));
    }
    GrunskyMatrix Gi = grunsky_matrix(fi, 8);
    GrunskyMatrix Go = operator_grunsky(fi, 8);
    rep.add("operator_vs_coefficient_grunsky", Suite::FaberGrunsky, (Go.raw - Gi.raw).cwiseAbs().maxCoeff(),
            cfg.tolerance("operator_grunsky", 1e-8));
    GrunskyCoefficients gc = grunsky_coeffs(fi, 4, 64);
    double kc = 0.0;
    for (cplx z : ring(0.4, 3, 0.1))
      for (int n = 1; n <= 3; ++n) kc = std::max(kc, std::abs(kernel_column(fi, n, z) - kernel_column_from_grunsky(gc, n, z)));
    rep.add("kernel_column", Suite::FaberGrunsky, kc, cfg.tolerance("kernel_column", 1e-8));
  }
  // cauchy-schiffer
  {
    const double gmax = max_on_circle(fi, 1.0), omax = max_on_circle(fi, 1.0 + sched.deltas.front());
    CVec inner;
    for (cplx xi : ring(0.5, 5, 0.35)) inner.push_back(fi.eval(xi));
    CVec outer = ring(1.25 * omax, 5, 0.3), far = ring(1.6 * omax, 5, 0.7);
    CVec hbar{1.0, cplx(0.3, 0.2), cplx(0.0, -0.1)};
    double wt = cfg.tolerance("wirtinger", 1e-5);
    VerifyReport w = verify_wirtinger_identities(fi, hbar, inner, outer, 1e-4, sched);
    rep.add("wirtinger", Suite::Cauchy, max_residual(w), wt);
    HarmonicDiskFunction h(8);
    for (int n = 1; n <= 8; ++n) {
      h.holo[n] = cplx(0.5 / n, 0.1);
      h.antiholo[n] = cplx(0.2, -0.4 / n);
    }
    h.holo[0] = 0.3;
    CVec xis = ring(0.45, 10, 0.1);
    rep.add("transmitted_jump", Suite::Cauchy, max_residual(transmitted_jump_check(fi, h, xis, sched)),
            cfg.tolerance("transmitted_jump", 1e-5));
    rep.add("two_sided_limit", Suite::Cauchy, max_residual(two_sided_limit_check(fi, h, far, sched)),
            cfg.tolerance("two_sided", 1e-5));
    Moebius M{1.0, 0.0, std::exp(kI * 0.4) / (3.0 * gmax), 1.0};
    CVec pts{inner[0], outer[1]};
    rep.add("mobius_invariance", Suite::Cauchy, max_residual(mobius_invariance_suite(fi, M, {h}, pts, std::nullopt, sched)),
            cfg.tolerance("mobius", 1e-7));
    const cplx p = fi.eval(0.0);
    Extrapolated an = anchor_limit(fi, [](cplx z) { return std::log(std::abs(z)); },
                                   [&](cplx w) { return 1.0 / (w - p); }, sched);
    rep.add("anchor_zero_trace", Suite::Cauchy, std::abs(an.value), cfg.tolerance("anchor", 1e-6));
    HarmonicDiskFunction b = bounce([](cplx z) { return std::conj(z) + 1.0 / z; }, 4, sched);
    rep.add("bounce", Suite::Cauchy, std::abs(b.antiholo[1] - 2.0) + std::abs(b.holo[1]), cfg.tolerance("anchor", 1e-6));
    double t12 = 0.0;
    UnivalentMap id = UnivalentMap::identity();
    for (int n = 1; n <= 5; ++n) {
      CVec alpha(static_cast<std::size_t>(n));
      alpha[static_cast<std::size_t>(n - 1)] = 1.0;
      cplx z = 2.0 * std::exp(kI * (0.3 * n));
      cplx want = std::pow(z, -n - 1);
      t12 = std::max(t12, std::abs(schiffer_T12(id, alpha, z) - want) / std::abs(want));
    }
    rep.add("schiffer_disk_values", Suite::Cauchy, t12, cfg.tolerance("schiffer_disk", 1e-6));
    detail["wirtinger_rows"] = w.rows.size();
  }
  // transmission
  {
    EnergyRatioReport ar = energy_ratio_report(CircleHomeo::automorphism(cplx(0.3, 0.2), 0.4), 8);
    rep.add("automorphism_energy_ratio", Suite::Transmission, std::abs(ar.C_hat - 1.0), cfg.tolerance("automorphism", 1e-8));
    CircleHomeo s = CircleHomeo::sine(0.3);
    FourierBoundaryData v(8);
    for (int n = -8; n <= 8; ++n) v.at(n) = cplx(1.0 / (1 + n * n), 0.1 * n);
    FourierBoundaryData back = compose_boundary(compose_boundary(v, s, 2048), s.inverse(), 2048, nullptr, 8);
    rep.add("composition_roundtrip", Suite::Transmission, std::abs(back.energy() - v.energy()) / v.energy(),
            cfg.tolerance("composition_roundtrip", 1e-6));
    auto H = [](cplx w) { return 1.0 / w; };
    const cplx p = fi.eval(0.0);
    auto Hp = [&](cplx w) { return H(w - p); };
    TransmitResult t = transmit(fi, Hp, 16, sched);
    CollarTransmit ct = transmit_holomorphic(fi, [&](cplx w) { return CVec{Hp(w)}; }, 1, 16);
    double d = 0.0;
    for (int n = -16; n <= 16; ++n) d = std::max(d, std::abs(t.trace[n] - ct.traces[0][n]));
    rep.add("pointwise_vs_collar_trace", Suite::Transmission, d, cfg.tolerance("transmit", 1e-6));
  }
  detail["map"] = f.describe();
  detail["working_map"] = fi.describe();
  rep.result = detail;
  rep.quadrature["schiffer_gl"] = 64;
  rep.quadrature["schiffer_nt"] = 256;
  rep.quadrature["douglas_M"] = 512;
}

void diff_walk(const Json& a, const Json& b, const std::string& path, Json& out) {
  if (a.is_object() && b.is_object()) {
    for (auto& [k, v] : a.items()) diff_walk(v, b.contains(k) ? b.at(k) : Json(), path + "/" + k, out);
    for (auto& [k, v] : b.items())
      if (!a.contains(k)) diff_walk(Json(), v, path + "/" + k, out);
    return;
  }
  if (a.is_array() && b.is_array()) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      diff_walk(i < a.size() ? a[i] : Json(), i < b.size() ? b[i] : Json(), path + "/" + std::to_string(i), out);
    return;
  }
  if (a == b) return;
  Json row{{"path", path}, {"a", a}, {"b", b}};
  if (a.is_number() && b.is_number()) row["delta"] = b.get<double>() - a.get<double>();
  out.push_back(row);
}

}  // namespace

RunReport run(const std::string& command, const ExperimentConfig& cfg) {
  static const std::map<std::string, std::function<void(const ExperimentConfig&, RunReport&)>> table{
      {"faber", cmd_faber},   {"grunsky", cmd_grunsky},   {"classify", cmd_classify}, {"jump", cmd_jump},
      {"approx", cmd_approx}, {"transmit", cmd_transmit}, {"verify", cmd_verify},     {"energy", cmd_energy}};
  auto it = table.find(command);
  if (it == table.end()) throw Error(ErrorKind::Config, "unknown command " + command);
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = command;
  rep.version = version();
  rep.config = cfg.json();
  rep.kappa_D = douglas_kappa();
  ExtrapolationSchedule s = cfg.schedule();
  rep.quadrature = Json::object();
  rep.quadrature["schedule_deltas"] = s.deltas;
  rep.quadrature["schedule_order"] = s.order;
  rep.quadrature["schedule_tol"] = s.tol;
  rep.quadrature["r_s"] = cfg.number("r_s", 1.25);
  rep.result = Json::object();
  try {
    it->second(cfg, rep);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(command) + ": " + e.what());
  }
  rep.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Json diff_reports(const Json& a, const Json& b) {
  if (a.value("command", "") != b.value("command", ""))
    throw Error(ErrorKind::Config, "incompatible reports: different commands");
  Json ma = a.contains("config") ? a.at("config").value("map", Json()) : Json();
  Json mb = b.contains("config") ? b.at("config").value("map", Json()) : Json();
  if (ma != mb) throw Error(ErrorKind::Config, "incompatible reports: different maps");
  Json fields = Json::array();
  Json ca = a, cb = b;
  ca.erase("wall_clock");
  cb.erase("wall_clock");
  diff_walk(ca, cb, "", fields);
  bool config_only = !fields.empty();
  // residual tolerances are echoes of the config
  static const std::regex echoed(R"(^/config/.*|^/residuals/\d+/tolerance$)");
  for (const auto& f : fields)
    if (!std::regex_match(f.at("path").get<std::string>(), echoed)) config_only = false;
  Json out{{"command", a.value("command", "")}, {"fields", fields}, {"config_only", config_only}};
  if (a.contains("result") && b.contains("result") && a.at("result").contains("norm") && b.at("result").contains("norm") &&
      a.at("result").contains("N") && b.at("result").contains("N")) {
    int na = a.at("result").at("N").get<int>(), nb = b.at("result").at("N").get<int>();
    double va = a.at("result").at("norm").get<double>(), vb = b.at("result").at("norm").get<double>();
    if (na != nb) {
      bool lo_first = na < nb;
      double lo = lo_first ? va : vb, hi = lo_first ? vb : va;
      out["norm_monotone_in_N"] = hi >= lo - 1e-12;
    }
  }
  return out;
}

}  // namespace quasikit
