#include <algorithm>
#include <cmath>
#include <numeric>

#include "gspec/ensembles.hpp"
#include "gspec/error.hpp"
#include "gspec/simd/kernels.hpp"

namespace gspec {

namespace {

// sum_{j != i} x_j / (1 + x_i x_j)
double off_diagonal_ratio(std::span<const double> x, std::size_t i) {
  return simd::ratio_sum(x[i], x) - x[i] / (1.0 + x[i] * x[i]);
}

double degree_residual(std::span<const int> kstar, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(kstar[i] - x[i] * off_diagonal_ratio(x, i)));
  return worst;
}

}  // namespace

ConstrainedFit solve_constrained(std::span<const int> kstar, double tol, int max_iter) {
  const std::size_t n = kstar.size();
  if (n < 2) throw ValidationError("constrained model needs at least two vertices");
  for (int k : kstar) {
    if (k <= 0) throw ValidationError("kstar entries must be positive");
    if (static_cast<std::size_t>(k) >= n) {
      throw ValidationError("kstar entry " + std::to_string(k) + " is not below N = " + std::to_string(n));
    }
  }
  const double total = std::accumulate(kstar.begin(), kstar.end(), 0.0);
  std::vector<double> x(n), next(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = kstar[i] / std::sqrt(total);

  ConstrainedFit fit;
  double residual = degree_residual(kstar, x);
  int iter = 0;
  while (residual >= tol && iter < max_iter) {
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = (1.0 - kConstrainedDamping) * x[i] + kConstrainedDamping * kstar[i] / off_diagonal_ratio(x, i);
    }
    x.swap(next);
    ++iter;
    residual = degree_residual(kstar, x);
    if (!std::isfinite(residual)) break;
  }
  if (!(residual < tol)) {
    throw ConvergenceError("constrained degree equations did not converge after " + std::to_string(iter) + " sweeps",
                           residual);
  }

  fit.p = SymMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) fit.p.set(i, j, x[i] * x[j] / (1.0 + x[i] * x[j]));
  fit.x = std::move(x);
  fit.residual = residual;
  fit.iterations = iter;
  return fit;
}

}  // namespace gspec
