#include <random>

#include "doctest.h"
#include "quasikit/faber_grunsky.hpp"

using namespace quasikit;

namespace {

UnivalentMap named(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e.map;
  throw std::runtime_error("no catalog map " + name);
}

// Grunsky coefficients from the generating function
//   log((G(z) - G(s)) / (z - s)) = -sum_{n,k} (b_nk / n) z^-n s^-k
// by a direct 2D DFT on |z| = |s| = R.
Eigen::MatrixXcd generating_function_oracle(const std::function<cplx(cplx)>& G, int N, double R) {
  const int M = 64;
  std::vector<CVec> L(M, CVec(M));
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      cplx z = R * std::exp(kI * (2.0 * kPi * a / M)), s = R * std::exp(kI * (2.0 * kPi * b / M));
      cplx q;
      if (a == b) {
        const double h = 1e-3;
        q = (-G(z + 2.0 * h) + 8.0 * G(z + h) - 8.0 * G(z - h) + G(z - 2.0 * h)) / (12.0 * h);
      } else {
        q = (G(z) - G(s)) / (z - s);
      }
      L[a][b] = std::log(q);
    }
  Eigen::MatrixXcd out(N, N);
  for (int n = 1; n <= N; ++n)
    for (int k = 1; k <= N; ++k) {
      cplx c = 0.0;
      for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) c += L[a][b] * std::exp(kI * (2.0 * kPi * (n * a + k * b) / M));
      c /= double(M) * M;
      c *= std::pow(R, n + k);
      out(n - 1, k - 1) = -static_cast<double>(n) * c;
    }
  return out;
}

}  // namespace

TEST_CASE("Faber polynomials of the identity are powers") {
  FaberTable t = faber_polynomials(UnivalentMap::identity(Side::Exterior), 6);
  for (int n = 1; n <= 6; ++n) CHECK(std::abs(t.eval(n, cplx(0.4, 0.3)) - std::pow(cplx(0.4, 0.3), n)) < 1e-13);
}

TEST_CASE("Faber polynomials of the Joukowski map") {
  const double tt = 0.5;
  UnivalentMap g = UnivalentMap::joukowski(tt);
  FaberTable t = faber_polynomials(g, 10);
  cplx z = 1.3 * std::exp(kI * 0.7);
  for (int n = 1; n <= 10; ++n) {
    cplx want = std::pow(z, n) + std::pow(tt, n) * std::pow(z, -n);
    CHECK(std::abs(t.eval(n, g.eval(z)) - want) < 1e-10 * std::abs(want));
  }
  const double e = 1e-6;
  cplx w(0.4, 0.9);
  CHECK(std::abs(t.deriv(4, w) - (t.eval(4, w + e) - t.eval(4, w - e)) / (2 * e)) < 1e-6);
}

TEST_CASE("Grunsky coefficients against the logarithmic generating function") {
  for (const char* name : {"cubic", "quadratic_0.4"}) {
    UnivalentMap f = named(name);
    GrunskyMatrix G = grunsky_matrix(f, 6);
    ExteriorForm ef = exterior_form(f);
    Eigen::MatrixXcd want = generating_function_oracle(ef.G, 6, 1.4);
    CHECK((G.raw - want).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("Joukowski Grunsky matrix is diagonal with norm |t|") {
  for (double t : {0.2, 0.5, 0.8}) {
    GrunskyMatrix G = grunsky_matrix(UnivalentMap::joukowski(t), 32);
    for (int n = 1; n <= 32; ++n)
      for (int k = 1; k <= 32; ++k) {
        cplx want = n == k ? cplx(std::pow(t, n)) : cplx(0.0);
        // the Faber recursion loses a few digits by order 32
        CHECK(std::abs(G.raw(n - 1, k - 1) - want) < 2e-9);
      }
    CHECK(std::abs(grunsky_norm(G) - t) < 1e-8);
  }
}

TEST_CASE("normalized Grunsky matrices are symmetric across the catalog") {
  for (auto& e : catalog()) {
    CAPTURE(e.name);
    GrunskyMatrix G = grunsky_matrix(e.map, 16);
    CHECK(G.symmetry_error < 1e-9);
    CHECK(G.residue_error < 1e-8);
  }
}

TEST_CASE("Grunsky coefficients do not depend on the normalization point") {
  UnivalentMap f = named("quadratic_0.4");
  GrunskyMatrix G0 = grunsky_matrix(f, 12);
  for (cplx q : {cplx(3.0), cplx(0.0, -2.5)}) {
    GrunskyOptions opt;
    opt.q = q;
    GrunskyMatrix Gq = grunsky_matrix(f, 12, opt);
    CHECK((Gq.raw - G0.raw).cwiseAbs().maxCoeff() < 1e-8);
  }
  GrunskyOptions opt;
  opt.q = cplx(3.0);
  GrunskyCoefficients a = grunsky_coeffs(f, 4), b = grunsky_coeffs(f, 4, 0, opt);
  CHECK(std::abs(a.constants[1] - b.constants[1]) > 1e-3);
}

TEST_CASE("Grunsky coefficients are Moebius invariant") {
  CHECK((grunsky_matrix(named("moebius_joukowski_0.5"), 12).raw - grunsky_matrix(named("joukowski_0.5"), 12).raw)
            .cwiseAbs()
            .maxCoeff() < 1e-7);
  CHECK((grunsky_matrix(named("moebius_quadratic_0.4"), 12).raw - grunsky_matrix(named("quadratic_0.4"), 12).raw)
            .cwiseAbs()
            .maxCoeff() < 1e-7);
}

TEST_CASE("norm report: power iteration agrees with the SVD") {
  GrunskyMatrix G = grunsky_matrix(named("cubic"), 24);
  NormReport r = grunsky_norm_report(G);
  REQUIRE(r.svd_norm);
  CHECK(r.converged);
  CHECK(std::abs(r.norm - *r.svd_norm) < 1e-8);
  CHECK(r.norm < 1.0);
}

TEST_CASE("weak Grunsky form is bounded by the norm") {
  GrunskyMatrix G = grunsky_matrix(named("quadratic_0.4"), 10);
  double kappa = grunsky_norm(G);
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    CVec h(10);
    for (auto& v : h) v = cplx(g(rng), g(rng));
    auto [form, sq] = weak_grunsky_form(G, h);
    CHECK(form <= kappa * sq * (1 + 1e-12));
  }
}

TEST_CASE("energy identity for Faber series") {
  UnivalentMap g = UnivalentMap::joukowski(0.5);
  std::mt19937 rng(11);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 3; ++trial) {
    CVec h(10);
    for (auto& v : h) v = cplx(d(rng), d(rng)) / 3.0;
    EnergyCheck ec = energy_identity_check(g, h);
    CHECK(ec.residual < 1e-6);
  }
  // the interior convention with a polynomial map
  EnergyCheck ec = energy_identity_check(named("cubic"), CVec{1.0, 0.5, cplx(0.0, 0.2)});
  CHECK(ec.residual < 1e-6);
}

TEST_CASE("Faber series and the Faber inverse are inverse") {
  UnivalentMap f = named("quadratic_0.4");
  CVec h{1.0, cplx(0.2, -0.3), 0.1, cplx(0.0, 0.05)};
  FaberSeries fs(f, h, std::nullopt, 0);
  FaberInverse inv = faber_inverse(f, [&](cplx w) { return fs(w); }, 6, ExtrapolationSchedule::collar());
  for (std::size_t n = 0; n < 6; ++n) CHECK(std::abs(inv.h[n] - (n < h.size() ? h[n] : cplx(0.0))) < 1e-9);
  // vanishes at infinity in the interior convention
  CHECK(std::abs(fs(1e8)) < 1e-7);
  CHECK_THROWS_AS(fs(0.1), Error);
}

TEST_CASE("Bergman-Schiffer kernel column matches the Grunsky route") {
  UnivalentMap f = named("cubic");
  GrunskyCoefficients gc = grunsky_coeffs(f, 4, 64);
  for (cplx z : {cplx(0.2, 0.1), cplx(-0.4, 0.3)})
    for (int n = 1; n <= 3; ++n) CHECK(std::abs(kernel_column(f, n, z) - kernel_column_from_grunsky(gc, n, z)) < 1e-8);
}

TEST_CASE("quasicircle classification") {
  Classification id = classify_quasicircle(UnivalentMap::identity(), 16);
  CHECK(id.verdict == Verdict::Quasicircle);
  CHECK(id.norm_N < 1e-12);
  CHECK(classify_quasicircle(UnivalentMap::joukowski(0.5), 16).verdict == Verdict::Quasicircle);
  Classification near = classify_quasicircle(UnivalentMap::joukowski(0.98), 32);
  CHECK(near.verdict == Verdict::Indeterminate);
  CHECK(std::abs(near.norm_N - 0.98) < 1e-8);
  CHECK_THROWS_AS(classify_quasicircle(UnivalentMap::taylor({1.0, 0.8}, false), 8), Error);
}

TEST_CASE("order and grid errors") {
  CHECK_THROWS_AS(grunsky_coeffs(named("cubic"), 0), Error);
  GrunskyOptions opt;
  opt.M = 16;
  try {
    grunsky_coeffs(named("cubic"), 8, 0, opt);
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resolution);
  }
}
