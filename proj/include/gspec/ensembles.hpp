#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gspec/graphon.hpp"
#include "gspec/sym_matrix.hpp"

namespace gspec {

enum class EntryLaw { kGaussian, kRademacher };

// How the variance of entry (i, j) is read off the graphon.
//   kGrid:         W(i/N, j/N) with 1-based indices (default).
//   kBlockAverage: N^2 times the integral of W over I_i x I_j.
enum class VarianceRule { kGrid, kBlockAverage };

struct GeneralizedWigner {
  Graphon w;
  EntryLaw law = EntryLaw::kGaussian;
  VarianceRule rule = VarianceRule::kGrid;
  // Entry means, read off with the same rule. Absent means centered entries.
  std::optional<Graphon> mean;
};

struct InhomER {
  Graphon f;
  double eps;
};

struct SparseWRandom {
  Graphon w;
  double eps;
};

struct Constrained {
  std::vector<int> kstar;
};

// Off-diagonal Gaussian part plus an independent Gaussian diagonal whose
// variance is the average row of the variance profile.
struct DecoupledModel {
  Graphon w;
};

// R G R + alpha R^{1/2} U R^{1/2} for the separable profile r(x) r(y).
struct MultiplicativeModel {
  Profile1D r;
};

using EnsembleVariant =
    std::variant<GeneralizedWigner, InhomER, SparseWRandom, Constrained, DecoupledModel, MultiplicativeModel>;

struct EnsembleSpec {
  EnsembleVariant model;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  // ValidationError unless n >= 2, eps in (0, 1), kstar positive and sized n.
  void validate() const;
  std::string name() const;
};

nlohmann::json to_json(const EnsembleSpec& spec);
// Accepts "kstar": "cube_root" as shorthand for floor(i^{1/3}), i = 1..n.
EnsembleSpec ensemble_from_json(const nlohmann::json& j);

// floor(i^{1/3}) for i = 1..n, computed in integers.
std::vector<int> cube_root_degrees(std::size_t n);

// Variance (or mean) of entry (i, j), 0-based indices.
double profile_entry(const Graphon& w, std::size_t i, std::size_t j, std::size_t n, VarianceRule rule);

SymMatrix sample_generalized_wigner(const EnsembleSpec& spec);

// Off-diagonal entries of A; each diagonal entry is minus the off-diagonal
// row sum. The diagonal of A is ignored.
SymMatrix laplacian_of(const SymMatrix& a);

// (m - means) / sqrt(N).
SymMatrix center_scale(const SymMatrix& m, const SymMatrix& means);
// (m - means) / scale, for pipelines scaled by sqrt(N eps).
SymMatrix center_scale(const SymMatrix& m, const SymMatrix& means, double scale);

// ValidationError when eps * f exceeds 1 anywhere on the grid.
SymMatrix sample_inhom_er(const EnsembleSpec& spec);

struct SparseSample {
  SymMatrix adjacency;
  std::vector<double> latents;
};
SparseSample sample_sparse_w_random(const EnsembleSpec& spec);

struct ConstrainedFit {
  std::vector<double> x;
  SymMatrix p;
  double residual = 0.0;
  int iterations = 0;
};

inline constexpr double kConstrainedDamping = 0.5;

// Damped fixed point for p_ij = x_i x_j / (1 + x_i x_j) with row sums kstar.
// ValidationError if some k_i <= 0 or k_i >= N; ConvergenceError (carrying
// the residual) if tol is not reached within max_iter sweeps.
ConstrainedFit solve_constrained(std::span<const int> kstar, double tol = 1e-10, int max_iter = 10000);
SymMatrix sample_constrained(const ConstrainedFit& fit, std::uint64_t seed);
// eps_N = (max k_i)^2 / sum k_i.
double constrained_scaling(std::span<const int> kstar);

SymMatrix sample_decoupled_model(const Graphon& w, std::size_t n, std::uint64_t seed);
SymMatrix sample_multiplicative_model(const Profile1D& r, std::size_t n, std::uint64_t seed);

// Entrywise expectation of the sampled matrix (zero diagonal for graph
// ensembles). Sparse W-random graphs use the conditional mean given latents.
SymMatrix expected_matrix(const EnsembleSpec& spec, std::span<const double> latents = {});

// The matrix whose ESD the limit theorems describe: the centered Laplacian
// (Delta - E Delta) divided by sqrt(N) or sqrt(N eps), or the sampled matrix
// itself for the decoupled and multiplicative models.
struct ScaledSample {
  SymMatrix matrix;
  double scale = 1.0;
};
ScaledSample sample_scaled_laplacian(const EnsembleSpec& spec);

// Variance kernel whose Laplacian moments describe the limit ESD of the
// scaled matrix: W itself, f - eps f^2 for Bernoulli models at fixed eps, and
// r(x) r(y) for the multiplicative model. nullopt for constrained graphs,
// whose limit depends on how kstar grows with N.
std::optional<Graphon> limit_variance_kernel(const EnsembleSpec& spec);

}  // namespace gspec
