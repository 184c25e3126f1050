#include "quasikit/extrapolation.hpp"

#include <cmath>

namespace quasikit {

ExtrapolationSchedule ExtrapolationSchedule::standard() {
  ExtrapolationSchedule s;
  for (int k = 0; k < 8; ++k) s.deltas.push_back(0.1 * std::ldexp(1.0, -k));
  s.order = 7;
  s.tol = 1e-9;
  return s;
}

ExtrapolationSchedule ExtrapolationSchedule::deep() {
  ExtrapolationSchedule s;
  for (int k = 0; k < 12; ++k) s.deltas.push_back(0.1 * std::ldexp(1.0, -k));
  s.order = 11;
  s.tol = 1e-9;
  return s;
}

ExtrapolationSchedule ExtrapolationSchedule::coarse() {
  ExtrapolationSchedule s;
  s.deltas = {0.1, 0.05, 0.025};
  s.order = 2;
  s.tol = 1e-2;
  return s;
}

ExtrapolationSchedule ExtrapolationSchedule::collar() {
  ExtrapolationSchedule s;
  s.deltas = {0.1, 0.05};
  s.order = 1;
  s.tol = 1e-8;
  return s;
}

void ExtrapolationSchedule::validate() const {
  if (deltas.size() < 2) throw Error(ErrorKind::Config, "schedule needs at least two radii");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0 && deltas[i] < 1.0))
      throw Error(ErrorKind::Config, "schedule offsets must lie in (0, 1)");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw Error(ErrorKind::Config, "schedule radii must be strictly monotone");
  }
  if (order < 1 || order > static_cast<int>(deltas.size()) - 1)
    throw Error(ErrorKind::Config, "extrapolation order must be in [1, #radii - 1]");
}

std::vector<double> ExtrapolationSchedule::interior_radii() const {
  std::vector<double> r;
  for (double d : deltas) r.push_back(1.0 - d);
  return r;
}

std::vector<double> ExtrapolationSchedule::exterior_radii() const {
  std::vector<double> r;
  for (double d : deltas) r.push_back(1.0 + d);
  return r;
}

ExtrapolationSchedule ExtrapolationSchedule::perturbed(double factor) const {
  ExtrapolationSchedule s = *this;
  for (double& d : s.deltas) d *= factor;
  return s;
}

namespace {
// Neville tableau evaluated at 0; diag[k] uses points first..first+k.
CVec neville_diagonal(const std::vector<double>& x, const CVec& y, std::size_t first) {
  const std::size_t n = x.size() - first;
  CVec P(y.begin() + static_cast<long>(first), y.end());
  CVec diag{P[0]};
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      double xi = x[first + i], xj = x[first + i + m];
      P[i] = (xi * P[i + 1] - xj * P[i]) / (xi - xj);
    }
    diag.push_back(P[0]);
  }
  return diag;
}
}  // namespace

Extrapolated extrapolate(const std::vector<double>& deltas, const CVec& values, int order) {
  if (deltas.size() != values.size() || deltas.empty())
    throw Error(ErrorKind::Config, "extrapolation needs matching, non-empty inputs");
  int n = static_cast<int>(deltas.size());
  int ord = std::min(order, n - 1);
  std::size_t first = static_cast<std::size_t>(n - 1 - ord);
  CVec diag = neville_diagonal(deltas, values, first);
  Extrapolated e;
  e.value = diag.back();
  e.error = diag.size() > 1 ? std::abs(diag.back() - diag[diag.size() - 2]) : 0.0;
  return e;
}

ExtrapolatedVec extrapolate(const std::vector<double>& deltas, const std::vector<CVec>& values,
                            int order) {
  if (values.empty()) throw Error(ErrorKind::Config, "extrapolation needs values");
  const std::size_t m = values[0].size();
  ExtrapolatedVec out;
  out.value.resize(m);
  CVec col(values.size());
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t k = 0; k < values.size(); ++k) col[k] = values[k][c];
    Extrapolated e = extrapolate(deltas, col, order);
    out.value[c] = e.value;
    out.error = std::max(out.error, e.error);
  }
  return out;
}

PowerResult power_iteration(const Eigen::MatrixXcd& A, double rel_tol, int max_iter) {
  PowerResult res;
  const Eigen::Index n = A.rows();
  if (n == 0 || A.cwiseAbs().maxCoeff() == 0.0) {
    res.converged = true;
    return res;
  }
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(n) / std::sqrt(static_cast<double>(n));
  double prev = 0.0, prev_diff = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXcd y = A * x;
    double lam = x.dot(y).real();
    double ny = y.norm();
    res.value = lam;
    res.iterations = it;
    if (ny == 0.0) {
      res.converged = true;
      break;
    }
    x = y / ny;
    if (it > 1) {
      double diff = lam - prev;
      double err = std::abs(diff);
      if (it > 2 && prev_diff != 0.0) {
        double q = diff / prev_diff;
        if (q > 0.0 && q < 1.0) err = std::abs(diff) * q / (1.0 - q);
      }
      if (err <= rel_tol * std::abs(lam) || diff == 0.0) {
        res.converged = true;
        break;
      }
      prev_diff = diff;
    }
    prev = lam;
  }
  return res;
}

PowerResult top_singular_value(const Eigen::MatrixXcd& B, double rel_tol) {
  PowerResult r = power_iteration(B.adjoint() * B, rel_tol);
  r.value = std::sqrt(std::max(0.0, r.value));
  return r;
}

}  // namespace quasikit
