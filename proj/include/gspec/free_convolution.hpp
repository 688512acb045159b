#pragma once

#include <complex>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

namespace gspec {

using cplx = std::complex<double>;

// Stieltjes transforms follow G(z) = \int dmu(t) / (z - t), so Im G < 0 on
// the upper half-plane.

// Transform of the standard normal law. DomainError unless Im z > 0.
cplx stieltjes_gaussian(cplx z);

enum class SubordinationMethod {
  kDamped,  // G <- (1 - d) G + d S(z - G)
  kNewton,  // Newton on G - S(z - G), using S'(w) = 1 - w S(w)
};

struct SubordinationOptions {
  SubordinationMethod method = SubordinationMethod::kDamped;
  double damping = 0.5;
  double tol = 1e-12;
  int max_iter = 10000;
};

struct SubordinationResult {
  cplx g;
  int iterations;
  double residual;  // |G - S(z - G)|
};

// Transform of gamma_M, the free convolution of the standard semicircle law
// with N(0, 1): the fixed point G = S(z - G) with Im G < 0. Throws
// ConvergenceError with the final residual if max_iter is exhausted.
SubordinationResult gamma_m_solve(cplx z, const SubordinationOptions& opts = {});
cplx gamma_m_stieltjes(cplx z, const SubordinationOptions& opts = {});

struct StieltjesGrid {
  std::vector<double> xs;
  double eta;
  std::vector<cplx> values;
};
StieltjesGrid gamma_m_stieltjes_grid(std::span<const double> xs, double eta, const SubordinationOptions& opts = {});

struct DensityCurve {
  std::vector<double> xs;
  std::vector<double> density;  // clamped at 0
  double eta = 0.0;
  bool extrapolated = false;

  double mass() const;         // trapezoid rule
  double moment(int k) const;  // trapezoid rule, not normalized by mass
  // Cumulative trapezoid normalized by mass, linearly interpolated; 0 left of
  // the grid and 1 right of it.
  double cdf(double x) const;
  // Inverse of cdf by bisection, p in [0, 1].
  double quantile(double p) const;

 private:
  // Cumulative trapezoid sums, rebuilt whenever the grid size changes.
  mutable std::vector<double> cumulative_;
  const std::vector<double>& cumulative() const;
};

inline constexpr double kDefaultDensityEta = 1e-2;
inline constexpr double kDefaultDensityLo = -8.0;
inline constexpr double kDefaultDensityHi = 8.0;
inline constexpr double kDefaultDensityStep = 0.01;

// lo + i * step for i = 0..round((hi - lo) / step); symmetric grids come out
// exactly symmetric.
std::vector<double> uniform_grid(double lo, double hi, double step);

// -(1/pi) Im G(x + i eta). With extrapolate, combines eta and 2 eta as
// 2 rho(eta) - rho(2 eta). DomainError unless eta is in [1e-4, 1e-1].
DensityCurve gamma_m_density(std::span<const double> xs, double eta = kDefaultDensityEta, bool extrapolate = true,
                             const SubordinationOptions& opts = {});

void write_density_csv(const DensityCurve& c, const std::filesystem::path& path, const nlohmann::json& config);
void write_stieltjes_csv(const StieltjesGrid& g, const std::filesystem::path& path, const nlohmann::json& config);

// ------------------------------------------------- free cumulants

inline constexpr int kMaxFreeCumulantOrder = 16;

// kappa[s - 1] is the free cumulant of order s; missing entries count as 0.
// Returns m_k = sum over non-crossing partitions of prod kappa_{|B|}.
// CapacityError for k > 16.
double moments_from_free_cumulants(std::span<const double> kappa, int k);
// Inverse map: moments[n - 1] = m_n for n = 1..k, returns kappa_1..kappa_k.
std::vector<double> free_cumulants_from_moments(std::span<const double> moments, int k);

// Every non-crossing partition of {0, .., k-1}, each as a list of blocks.
// Intended for small k (CapacityError above 12).
std::vector<std::vector<std::vector<int>>> enumerate_noncrossing_partitions(int k);

// Free cumulants of gamma_M up to order k: Gaussian moments mapped through
// the inverse transform, plus 1 at order 2 for the semicircle.
std::vector<double> gamma_m_free_cumulants(int k);

}  // namespace gspec
