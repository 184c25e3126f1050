#include "quasikit/common.hpp"

#include <cmath>

namespace quasikit {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::Inversion: return "inversion";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::NodeCollision: return "node-collision";
    case ErrorKind::Undersampling: return "undersampling";
    case ErrorKind::Pairing: return "pairing";
    case ErrorKind::Regularity: return "boundary-regularity";
    case ErrorKind::Tolerance: return "tolerance";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {
template <class T>
T pairwise(const T* x, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise(x, h) + pairwise(x + h, n - h);
}
}  // namespace

cplx pairwise_sum(const cplx* x, std::size_t n) { return pairwise(x, n); }
double pairwise_sum(const double* x, std::size_t n) { return pairwise(x, n); }

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = mid - half * z;
    x[n - 1 - i] = mid + half * z;
    w[i] = w[n - 1 - i] = half * wi;
  }
}

}  // namespace quasikit
