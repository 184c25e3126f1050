#include <random>
#include <sstream>

#include "doctest.h"
#include "quasikit/fft.hpp"
#include "quasikit/series.hpp"

using namespace quasikit;

namespace {

FourierBoundaryData random_fourier(int N, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  FourierBoundaryData u(N);
  for (int n = -N; n <= N; ++n) u.at(n) = cplx(g(rng), g(rng)) / (1.0 + n * n);
  return u;
}

double max_diff(const FourierBoundaryData& a, const FourierBoundaryData& b) {
  double d = 0.0;
  for (int n = -std::max(a.N, b.N); n <= std::max(a.N, b.N); ++n) d = std::max(d, std::abs(a[n] - b[n]));
  return d;
}

}  // namespace

TEST_CASE("pairwise sum and Gauss-Legendre") {
  std::vector<double> x(1000, 0.1);
  CHECK(pairwise_sum(x.data(), x.size()) == doctest::Approx(100.0).epsilon(1e-15));
  std::vector<double> nodes, w;
  gauss_legendre(8, 0.0, 2.0, nodes, w);
  // exact for degree 15
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += w[i] * std::pow(nodes[i], 15);
  CHECK(s == doctest::Approx(std::pow(2.0, 16) / 16.0).epsilon(1e-13));
  CHECK(next_pow2(257) == 512);
  CHECK(is_pow2(1024));
  CHECK_FALSE(is_pow2(1000));
}

TEST_CASE("FFT coefficient reads on a circle of radius r") {
  // f(z) = 2 + 3 z^2 - z^-3 sampled on |z| = 0.8
  const std::size_t M = 64;
  const double r = 0.8;
  CVec s(M);
  for (std::size_t j = 0; j < M; ++j) {
    cplx z = r * std::exp(kI * (2.0 * kPi * j / M));
    s[j] = 2.0 + 3.0 * z * z - 1.0 / (z * z * z);
  }
  CVec c = fft::coefficients(s, 4, r);
  CHECK(std::abs(c[4] - 2.0) < 1e-13);
  CHECK(std::abs(c[6] - 3.0) < 1e-13);
  CHECK(std::abs(c[1] + 1.0) < 1e-13);
  CHECK(std::abs(c[5]) < 1e-13);
  CHECK_THROWS_AS(fft::coefficients(CVec(48), 4), Error);
}

TEST_CASE("Laurent series evaluation matches the direct sum") {
  LaurentSeries s(-3, 4);
  for (int n = -3; n <= 4; ++n) s.at(n) = cplx(0.5 * n, 1.0 / (2 + n * n));
  cplx z(0.7, -0.4), direct = 0.0, dd = 0.0;
  for (int n = -3; n <= 4; ++n) {
    direct += s[n] * std::pow(z, n);
    if (n != 0) dd += static_cast<double>(n) * s[n] * std::pow(z, n - 1);
  }
  CHECK(std::abs(s.eval(z) - direct) < 1e-14);
  CHECK(std::abs(s.derivative(z) - dd) < 1e-13);
}

TEST_CASE("Fourier data: energy, evaluation, reality") {
  FourierBoundaryData e1(1);
  e1.at(1) = 1.0;
  CHECK(e1.energy() == 1.0);
  CHECK(std::abs(e1.eval(0.3) - std::exp(kI * 0.3)) < 1e-15);
  CHECK(std::abs(e1.derivative(0.3) - kI * std::exp(kI * 0.3)) < 1e-15);
  FourierBoundaryData c(2);
  c.at(2) = cplx(1.0, 2.0);
  c.at(-2) = cplx(1.0, -2.0);
  CHECK(c.is_real());
  CHECK_FALSE(e1.is_real());
}

TEST_CASE("harmonic extension and boundary trace are inverse") {
  for (unsigned seed : {1u, 2u, 3u}) {
    FourierBoundaryData u = random_fourier(7, seed);
    HarmonicDiskFunction h = harmonic_extension(u);
    CHECK(max_diff(boundary_trace(h), u) == 0.0);
    CHECK(dirichlet_energy(h) == doctest::Approx(u.energy()));
    // boundary values through eval on the circle
    double th = 0.37 * seed;
    CHECK(std::abs(h.eval(std::exp(kI * th)) - u.eval(th)) < 1e-13);
  }
}

TEST_CASE("Wirtinger derivatives of harmonic disk functions") {
  HarmonicDiskFunction h(3);
  h.holo = {0.1, 1.0, cplx(0.0, 0.5), 0.2};
  h.antiholo = {0.0, cplx(0.3, 0.1), 0.0, 0.4};
  cplx z(0.3, 0.2);
  const double e = 1e-6;
  cplx fx = (h.eval(z + e) - h.eval(z - e)) / (2 * e);
  cplx fy = (h.eval(z + kI * e) - h.eval(z - kI * e)) / (2 * e);
  CHECK(std::abs(h.dz(z) - 0.5 * (fx - kI * fy)) < 1e-8);
  CHECK(std::abs(h.dzbar(z) - 0.5 * (fx + kI * fy)) < 1e-8);
}

TEST_CASE("projection splits h into its two parts") {
  FourierBoundaryData u = random_fourier(5, 9);
  HarmonicDiskFunction h = harmonic_extension(u);
  HarmonicDiskFunction p = project(h, Part::Holo, Normalization::AntiholoVanishes);
  HarmonicDiskFunction a = project(h, Part::Antiholo, Normalization::AntiholoVanishes);
  cplx z(0.2, -0.5);
  CHECK(std::abs(p.eval(z) + a.eval(z) - h.eval(z)) < 1e-14);
  CHECK(std::abs(a.eval(0.0)) < 1e-15);
  HarmonicDiskFunction p2 = project(h, Part::Holo, Normalization::HoloVanishes);
  CHECK(std::abs(p2.eval(0.0)) < 1e-15);
}

TEST_CASE("Douglas energy converges to the coefficient energy") {
  FourierBoundaryData u = random_fourier(8, 4);
  double exact = u.energy();
  double e512 = douglas_energy(u, 512), e1024 = douglas_energy(u, 1024);
  CHECK(std::abs(e512 - exact) / exact < 1e-3);
  CHECK(std::abs(e1024 - exact) <= std::abs(e512 - exact));
  CHECK_THROWS_AS(douglas_energy(u, 16), Error);
}

TEST_CASE("series composition against polynomial multiplication") {
  // (z + z^2)^2 with the outer series w^2
  LaurentSeries outer(0, 2), inner(0, 2);
  outer.at(2) = 1.0;
  inner.at(1) = 1.0;
  inner.at(2) = 1.0;
  LaurentSeries c = compose_series(outer, inner, 0, 6, 0.5, 64);
  std::vector<double> want{0, 0, 1, 2, 1, 0, 0};
  for (int n = 0; n <= 6; ++n) CHECK(std::abs(c[n] - want[static_cast<std::size_t>(n)]) < 1e-13);
  // outer 1/w is valid only away from 0
  LaurentSeries inv(-1, -1);
  inv.at(-1) = 1.0;
  CHECK_THROWS_AS(compose_series(inv, inner, -2, 2, 0.5, 64, Annulus{2.0, 10.0}), Error);
}

TEST_CASE("Poisson evaluation reproduces the harmonic extension") {
  FourierBoundaryData u = random_fourier(6, 5);
  HarmonicDiskFunction h = harmonic_extension(u);
  for (cplx z : {cplx(0.0), cplx(0.5, 0.1), cplx(-0.2, 0.85)}) CHECK(std::abs(poisson_eval(u, z) - h.eval(z)) < 1e-12);
  CHECK_THROWS_AS(poisson_eval(u, 1.0), Error);
}

TEST_CASE("sampling round trip, add and scale") {
  FourierBoundaryData u = random_fourier(10, 6), v = random_fourier(4, 7);
  CHECK(max_diff(from_samples(sample(u, default_grid(u.N)), u.N), u) < 1e-14);
  double loss = -1.0;
  FourierBoundaryData s = add(u, v, &loss);
  CHECK(s.N == 4);
  double lost = 0.0;
  for (int n = 5; n <= 10; ++n) lost += n * (std::norm(u[n]) + std::norm(u[-n]));
  CHECK(loss == doctest::Approx(lost));
  CHECK(std::abs(scale(u, 2.0)[3] - 2.0 * u[3]) < 1e-15);
}

TEST_CASE("JSON and CSV round trips") {
  FourierBoundaryData u = random_fourier(3, 8);
  CHECK(max_diff(fourier_from_json(to_json(u)), u) == 0.0);
  CHECK_THROWS_AS(series_from_json(R"({"n_min":0,"n_max":2,"re":[1],"im":[0]})"), Error);
  GridSamples g = sample(u, 16);
  std::stringstream ss;
  write_grid_csv(ss, g);
  GridSamples back = read_grid_csv(ss);
  REQUIRE(back.M() == g.M());
  for (std::size_t j = 0; j < g.M(); ++j) CHECK(back.values[j] == g.values[j]);
}
