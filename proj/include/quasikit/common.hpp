#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace quasikit {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
  Domain,
  Resolution,
  Inversion,
  Conditioning,
  Consistency,
  Convergence,
  NodeCollision,
  Undersampling,
  Pairing,
  Regularity,
  Tolerance,
  Config,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);
bool is_pow2(std::size_t n);

// Fixed-order pairwise summation; the association order depends only on the length.
cplx pairwise_sum(const cplx* x, std::size_t n);
double pairwise_sum(const double* x, std::size_t n);
inline cplx pairwise_sum(const CVec& x) { return pairwise_sum(x.data(), x.size()); }

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

}  // namespace quasikit
