#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "gspec/ensembles.hpp"
#include "gspec/moments.hpp"
#include "gspec/sym_matrix.hpp"

namespace gspec {

// Entries may differ from their transpose by at most this much before the
// eigen-solver refuses the input.
inline constexpr double kSymmetryTolerance = 1e-12;

// All eigenvalues, ascending, from a dense divide-and-conquer solver.
std::vector<double> eigenvalues_sym(const SymMatrix& m);

struct SpectralSample {
  std::vector<double> eigenvalues;  // ascending
  std::size_t n = 0;
  double scale_applied = 1.0;
  nlohmann::json ensemble;
  double wall_time = 0.0;  // seconds spent sampling and solving
};

// Samples the scaled matrix of `spec` (see sample_scaled_laplacian) and
// diagonalizes it.
SpectralSample spectral_sample(const EnsembleSpec& spec);
SpectralSample spectral_sample_of(const SymMatrix& m, double scale = 1.0);

// k -> (1/N) sum lambda^k.
MomentReport esd_moments(std::span<const double> eigenvalues, std::span<const int> orders);
MomentReport esd_moments(const SpectralSample& s, std::span<const int> orders);
// Standard error of the k-th empirical moment treating eigenvalues as
// independent draws: sqrt((m_{2k} - m_k^2) / N).
double esd_moment_standard_error(std::span<const double> eigenvalues, int k);

double spectral_norm(std::span<const double> eigenvalues);
double spectral_norm(const SpectralSample& s);

// Bins are [e_b, e_{b+1}) except the last, which is closed. Values outside
// [lo, hi] are tallied in underflow/overflow so the grand total is N.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;
  std::size_t overflow = 0;
};
Histogram histogram(std::span<const double> values, int bins, double lo, double hi);

// Right-continuous step CDF of a finite sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);
  double operator()(double x) const;
  const std::vector<double>& support() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

inline constexpr double kLevyTolerance = 1e-9;

// Smallest eps with F(x - eps) - eps <= G(x) <= F(x + eps) + eps for all x,
// by bisection to kLevyTolerance.
double levy_distance(const EmpiricalCdf& f, const EmpiricalCdf& g);
double ks_distance(const EmpiricalCdf& f, const EmpiricalCdf& g);
// Against a continuous reference CDF.
double ks_distance(const EmpiricalCdf& f, const std::function<double(double)>& cdf);

// ---------------------------------------------------------- norm scans

struct NormScanRow {
  std::size_t n;
  int trial;
  double norm;
  double ratio;  // norm / sqrt(2 N log N)
};

struct NormScanSummary {
  std::size_t n;
  double median;
  double min;
  double max;
};

struct NormScanResult {
  std::vector<NormScanRow> rows;
  std::vector<NormScanSummary> summary;
  double lower_bracket = 0.0;  // sqrt(inf sigma^2)
  double upper_bracket = 0.0;  // sqrt(2 sup sigma^2)
};

inline const std::vector<std::size_t> kDefaultScanSizes{512, 1024, 2048, 4096};
inline constexpr int kDefaultScanTrials = 5;

// Seed of trial t at dimension N, derived from the scan seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, int trial);

// Mean-zero generalized Wigner template; the unscaled centered Laplacian is
// diagonalized for every (N, trial).
NormScanResult norm_scan(const GeneralizedWigner& model, std::span<const std::size_t> ns, int trials,
                         std::uint64_t seed);

struct MeanNormRow {
  std::size_t n;
  int trial;
  double ratio;  // ||Delta|| / N
};

struct MeanNormScanResult {
  std::vector<MeanNormRow> rows;
  std::vector<NormScanSummary> summary;
  double limit = 0.0;  // ||E Delta|| / N at the largest N
};

// Template must carry a mean profile. Laplacians are not centered.
MeanNormScanResult mean_norm_scan(const GeneralizedWigner& model, std::span<const std::size_t> ns, int trials,
                                  std::uint64_t seed);

// ---------------------------------------------------------- CSV output

// Each writer emits a "# config: <json>" line first when config is non-null.
void write_eigenvalues_csv(const SpectralSample& s, const std::filesystem::path& path, const nlohmann::json& config);
void write_histogram_csv(const Histogram& h, const std::filesystem::path& path, const nlohmann::json& config);
void write_norm_scan_csv(const NormScanResult& r, const std::filesystem::path& path, const nlohmann::json& config);
void write_mean_norm_scan_csv(const MeanNormScanResult& r, const std::filesystem::path& path,
                              const nlohmann::json& config);

}  // namespace gspec
