#include "gspec/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "gspec/error.hpp"
#include "gspec/simd/kernels.hpp"

namespace gspec {

std::vector<double> eigenvalues_sym(const SymMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  if (const double a = m.asymmetry(); a > kSymmetryTolerance) {
    throw ValidationError("eigenvalues_sym needs a symmetric matrix; asymmetry " + std::to_string(a));
  }
  std::vector<double> work(m.data().begin(), m.data().end());
  std::vector<double> w(n);
  const auto ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', ln, work.data(), ln, w.data());
  if (info != 0) throw ConvergenceError("dsyevd failed with info " + std::to_string(info), static_cast<double>(info));
  return w;  // LAPACK returns ascending order
}

SpectralSample spectral_sample_of(const SymMatrix& m, double scale) {
  const auto start = std::chrono::steady_clock::now();
  SpectralSample s;
  s.eigenvalues = eigenvalues_sym(m);
  s.n = m.size();
  s.scale_applied = scale;
  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

SpectralSample spectral_sample(const EnsembleSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const ScaledSample scaled = sample_scaled_laplacian(spec);
  SpectralSample s = spectral_sample_of(scaled.matrix, scaled.scale);
  s.ensemble = to_json(spec);
  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

MomentReport esd_moments(std::span<const double> eigenvalues, std::span<const int> orders) {
  MomentReport report;
  report.source = MomentSource::kEmpirical;
  if (orders.empty()) return report;
  const int top = *std::max_element(orders.begin(), orders.end());
  std::vector<double> sums(static_cast<std::size_t>(std::max(top, 0)));
  simd::power_sums(eigenvalues, sums);
  const double n = static_cast<double>(eigenvalues.size());
  for (int k : orders) {
    if (k < 0) throw ValidationError("moment orders must be nonnegative");
    report.entries[k] = k == 0 ? 1.0 : (n > 0 ? sums[static_cast<std::size_t>(k - 1)] / n : 0.0);
  }
  report.metadata = {{"n", eigenvalues.size()}};
  return report;
}

MomentReport esd_moments(const SpectralSample& s, std::span<const int> orders) {
  MomentReport r = esd_moments(s.eigenvalues, orders);
  r.metadata["scale"] = s.scale_applied;
  if (!s.ensemble.is_null()) r.metadata["ensemble"] = s.ensemble;
  return r;
}

double esd_moment_standard_error(std::span<const double> eigenvalues, int k) {
  const std::vector<int> orders{k, 2 * k};
  const auto r = esd_moments(eigenvalues, orders);
  const double var = r.entries.at(2 * k) - r.entries.at(k) * r.entries.at(k);
  return std::sqrt(std::max(var, 0.0) / static_cast<double>(eigenvalues.size()));
}

double spectral_norm(std::span<const double> eigenvalues) {
  double m = 0.0;
  for (double v : eigenvalues) m = std::max(m, std::abs(v));
  return m;
}

double spectral_norm(const SpectralSample& s) { return spectral_norm(s.eigenvalues); }

Histogram histogram(std::span<const double> values, int bins, double lo, double hi) {
  if (bins < 1) throw ValidationError("histogram needs at least one bin");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) throw ValidationError("histogram range must satisfy lo < hi");
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    if (v < lo) {
      ++h.underflow;
    } else if (v > hi) {
      ++h.overflow;
    } else {
      // upper_bound keeps bins right-open; the top edge falls into the last bin.
      auto b = static_cast<std::size_t>(std::upper_bound(h.edges.begin(), h.edges.end(), v) - h.edges.begin()) - 1;
      ++h.counts[std::min(b, h.counts.size() - 1)];
    }
  }
  return h;
}

namespace {

void write_config_line(std::ofstream& os, const nlohmann::json& config) {
  if (!config.is_null()) os << "# config: " << config.dump() << '\n';
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open " + path.string() + " for writing");
  os << std::setprecision(17);
  return os;
}

}  // namespace

void write_eigenvalues_csv(const SpectralSample& s, const std::filesystem::path& path, const nlohmann::json& config) {
  auto os = open_csv(path);
  write_config_line(os, config);
  os << "# n=" << s.n << " scale=" << s.scale_applied << '\n';
  os << "eigenvalue\n";
  for (double v : s.eigenvalues) os << v << '\n';
}

void write_histogram_csv(const Histogram& h, const std::filesystem::path& path, const nlohmann::json& config) {
  auto os = open_csv(path);
  write_config_line(os, config);
  os << "# underflow=" << h.underflow << " overflow=" << h.overflow << '\n';
  os << "left,right,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) os << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.counts[b] << '\n';
}

void write_norm_scan_csv(const NormScanResult& r, const std::filesystem::path& path, const nlohmann::json& config) {
  auto os = open_csv(path);
  write_config_line(os, config);
  os << "N,trial,norm,ratio\n";
  for (const auto& row : r.rows) os << row.n << ',' << row.trial << ',' << row.norm << ',' << row.ratio << '\n';
}

void write_mean_norm_scan_csv(const MeanNormScanResult& r, const std::filesystem::path& path,
                              const nlohmann::json& config) {
  auto os = open_csv(path);
  write_config_line(os, config);
  os << "# limit=" << r.limit << '\n';
  os << "N,trial,ratio\n";
  for (const auto& row : r.rows) os << row.n << ',' << row.trial << ',' << row.ratio << '\n';
}

}  // namespace gspec
