#include <sstream>

#include "doctest.h"
#include "quasikit/transmission.hpp"

using namespace quasikit;

TEST_CASE("circle homeomorphisms: lifts and inverses") {
  CircleHomeo s = CircleHomeo::sine(0.5);
  CHECK(s(1.0 + 2.0 * kPi) == doctest::Approx(s(1.0) + 2.0 * kPi));
  CircleHomeo si = s.inverse();
  for (double th : {0.1, 1.7, 4.0}) CHECK(std::abs(si(s(th)) - th) < 1e-8);  // resampled inverse
  CircleHomeo a = CircleHomeo::automorphism(cplx(0.3, 0.2), 0.4);
  cplx a0(0.3, 0.2);
  for (double th : {0.0, 2.5}) {
    cplx z = std::exp(kI * th);
    cplx want = std::exp(kI * 0.4) * (z - a0) / (1.0 - std::conj(a0) * z);
    CHECK(std::abs(a.point(th) - want) < 1e-13);
    CHECK(std::abs(a.inverse()(a(th)) - th) < 1e-12);
  }
  CHECK_THROWS_AS(CircleHomeo::sine(1.0), Error);
}

TEST_CASE("sampled homeomorphisms interpolate monotonically") {
  std::vector<double> psi;
  const std::size_t M = 64;
  for (std::size_t j = 0; j < M; ++j) {
    double th = 2.0 * kPi * j / M;
    psi.push_back(th + 0.3 * std::sin(th));
  }
  CircleHomeo p = CircleHomeo::from_samples(psi);
  double prev = p(0.0);
  for (int k = 1; k <= 400; ++k) {
    double v = p(2.0 * kPi * k / 400.0);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(std::abs(p(0.77) - (0.77 + 0.3 * std::sin(0.77))) < 1e-4);
}

TEST_CASE("composition with rotations and automorphisms preserves energy") {
  FourierBoundaryData u(6);
  for (int n = -6; n <= 6; ++n) u.at(n) = cplx(1.0 / (1 + std::abs(n)), 0.1 * n);
  FourierBoundaryData r = compose_boundary(u, CircleHomeo::rotation(0.7), 256);
  CHECK(r.energy() == doctest::Approx(u.energy()).epsilon(1e-12));
  CHECK(std::abs(r[2] - u[2] * std::exp(kI * 1.4)) < 1e-12);
  FourierBoundaryData e1(1);
  e1.at(1) = 1.0;
  double spill = -1.0;
  FourierBoundaryData a = compose_boundary(e1, CircleHomeo::automorphism(cplx(0.3, 0.2)), 512, &spill);
  CHECK(a.energy() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(spill < 1e-12);
  CHECK_THROWS_AS(compose_boundary(u, CircleHomeo::identity(), 16), Error);
}

TEST_CASE("energy ratio of the composition operator") {
  CHECK(std::abs(energy_ratio_norm(CircleHomeo::identity(), 8) - 1.0) < 1e-10);
  CHECK(std::abs(energy_ratio_norm(CircleHomeo::rotation(1.1), 8) - 1.0) < 1e-10);
  EnergyRatioReport r = energy_ratio_report(CircleHomeo::automorphism(cplx(0.3, 0.2), 0.4), 8);
  CHECK(std::abs(r.C_hat - 1.0) < 1e-8);
  CHECK(std::abs(r.eig_check - r.C_hat) < 1e-8);
  double c16 = energy_ratio_norm(CircleHomeo::sine(0.5), 16), c32 = energy_ratio_norm(CircleHomeo::sine(0.5), 32);
  CHECK(c16 > 1.0);
  CHECK(std::abs(c32 - c16) / c16 < 0.05);
}

TEST_CASE("quasisymmetry modulus") {
  CHECK(qs_modulus(CircleHomeo::identity()) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(qs_modulus(CircleHomeo::sine(0.5)) > 1.0);
}

TEST_CASE("transmission of a holomorphic exterior function") {
  UnivalentMap id = UnivalentMap::identity();
  TransmitResult t = transmit(id, [](cplx w) { return 1.0 / w; }, 8);
  CHECK(std::abs(t.h.antiholo[1] - 1.0) < 1e-10);
  CHECK(std::abs(t.h.holo[1]) < 1e-10);
  CHECK(t.output_energy == doctest::Approx(1.0).epsilon(1e-9));
  UnivalentMap f = interior_form(UnivalentMap::joukowski(0.5));
  auto H = [](cplx w) { return 1.0 / w + 0.2 / (w * w); };
  TransmitResult p = transmit(f, H, 16);
  CollarTransmit c = transmit_holomorphic(f, [&](cplx w) { return CVec{H(w)}; }, 1, 16);
  for (int n = -16; n <= 16; ++n) CHECK(std::abs(p.trace[n] - c.traces[0][n]) < 1e-7);
  // a function with a pole on the collar is not holomorphic across it
  CHECK_THROWS_AS(transmit_holomorphic(id, [](cplx w) { return CVec{1.0 / (w - 1.07)}; }, 1, 16), Error);
}

TEST_CASE("welding of a rotated disk") {
  UnivalentMap f = moebius_compose(Moebius::rotation(0.7), UnivalentMap::identity());
  CircleHomeo phi = welding_phi(f, UnivalentMap::identity(Side::Exterior));
  for (double th : {0.0, 1.0, 3.0}) CHECK(std::abs(phi(th) - th - 0.7) < 1e-9);
  CHECK_THROWS_AS(welding_phi(UnivalentMap::identity(), UnivalentMap::identity()), Error);
}

TEST_CASE("norm CSV") {
  std::ostringstream os;
  write_norm_csv(os, {{4, 0.5}, {8, 0.6}});
  CHECK(os.str().find("8,") != std::string::npos);
}
