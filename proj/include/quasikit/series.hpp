#pragma once

#include <iosfwd>
#include <limits>

#include "quasikit/common.hpp"

namespace quasikit {

// Coefficients c_n for n in [n_min, n_max] of a Laurent (or Taylor) series.
struct LaurentSeries {
  int n_min = 0;
  int n_max = -1;
  CVec c;

  LaurentSeries() = default;
  LaurentSeries(int lo, int hi) : n_min(lo), n_max(hi), c(hi >= lo ? hi - lo + 1 : 0) {}

  cplx operator[](int n) const { return (n < n_min || n > n_max) ? cplx(0.0) : c[n - n_min]; }
  cplx& at(int n) { return c.at(n - n_min); }
  cplx eval(cplx z) const;
  cplx derivative(cplx z) const;
};

// Truncated Fourier data on the unit circle, c_n for |n| <= N.
struct FourierBoundaryData {
  int N = 0;
  CVec c;  // c[n + N]

  FourierBoundaryData() = default;
  explicit FourierBoundaryData(int order) : N(order), c(2 * order + 1) {}

  cplx operator[](int n) const { return std::abs(n) > N ? cplx(0.0) : c[n + N]; }
  cplx& at(int n) { return c.at(n + N); }
  cplx eval(double theta) const;
  cplx derivative(double theta) const;
  // Sum |n| |c_n|^2.
  double energy() const;
  bool is_real(double tol = 1e-14) const;
};

// h = sum_{n>=0} a_n z^n + sum_{n>=1} b_n conj(z)^n; antiholo[0] is unused and kept at zero.
struct HarmonicDiskFunction {
  int N = 0;
  CVec holo;
  CVec antiholo;

  HarmonicDiskFunction() = default;
  explicit HarmonicDiskFunction(int order) : N(order), holo(order + 1), antiholo(order + 1) {}

  cplx eval(cplx z) const;
  // Wirtinger derivatives d/dz and d/dzbar.
  cplx dz(cplx z) const;
  cplx dzbar(cplx z) const;
};

struct GridSamples {
  CVec values;  // at theta_j = 2 pi j / M
  std::size_t M() const { return values.size(); }
  double theta(std::size_t j) const { return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M()); }
};

struct Annulus {
  double rmin = 0.0;
  double rmax = std::numeric_limits<double>::infinity();
};

double dirichlet_energy(const HarmonicDiskFunction& h);

// Calibration constant for the Douglas double integral, fixed so that e^{i theta} has energy 1.
double douglas_kappa();
double douglas_raw(const FourierBoundaryData& u, std::size_t M);
double douglas_energy(const FourierBoundaryData& u, std::size_t M);

HarmonicDiskFunction harmonic_extension(const FourierBoundaryData& u);
FourierBoundaryData boundary_trace(const HarmonicDiskFunction& h);

enum class Part { Holo, Antiholo };
// Which summand is normalized to vanish at 0; the constant goes to the other one.
enum class Normalization { HoloVanishes, AntiholoVanishes };

HarmonicDiskFunction project(const HarmonicDiskFunction& h, Part part, Normalization norm);

// Coefficients n in [n_min, n_max] of outer(inner(z)) read on |z| = r with an M-point FFT.
LaurentSeries compose_series(const LaurentSeries& outer, const LaurentSeries& inner, int n_min,
                             int n_max, double r, std::size_t M, Annulus outer_domain = {});
// Same, with inner given by samples on |z| = r.
LaurentSeries compose_series(const LaurentSeries& outer, const GridSamples& inner, int n_min,
                             int n_max, double r, Annulus outer_domain = {});

// Poisson-kernel quadrature for the harmonic extension at |z| < 1.
cplx poisson_eval(const FourierBoundaryData& u, cplx z);

// Binary operations keep the smaller order; loss receives the discarded energy.
FourierBoundaryData add(const FourierBoundaryData& a, const FourierBoundaryData& b,
                        double* loss = nullptr);
FourierBoundaryData scale(const FourierBoundaryData& a, cplx s);

GridSamples sample(const FourierBoundaryData& u, std::size_t M);
FourierBoundaryData from_samples(const GridSamples& g, int N);

// Default FFT grid: next power of two >= 4N+1.
std::size_t default_grid(int N);

// JSON objects {"n_min","n_max","re","im"}.
std::string to_json(const LaurentSeries& s);
std::string to_json(const FourierBoundaryData& u);
LaurentSeries series_from_json(const std::string& text);
FourierBoundaryData fourier_from_json(const std::string& text);
void write_grid_csv(std::ostream& os, const GridSamples& g);
GridSamples read_grid_csv(std::istream& is);

}  // namespace quasikit
