#include <algorithm>
#include <cmath>
#include <map>

#include "gspec/error.hpp"
#include "gspec/rng.hpp"
#include "gspec/spectral.hpp"

namespace gspec {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <class Row, class Value>
std::vector<NormScanSummary> summarize(const std::vector<Row>& rows, Value value) {
  std::map<std::size_t, std::vector<double>> by_n;
  for (const auto& r : rows) by_n[r.n].push_back(value(r));
  std::vector<NormScanSummary> out;
  for (auto& [n, v] : by_n) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    out.push_back({n, median(v), *lo, *hi});
  }
  return out;
}

void check_scan_args(std::span<const std::size_t> ns, int trials) {
  if (ns.empty()) throw ValidationError("scan needs at least one dimension");
  if (trials < 1) throw ValidationError("scan needs at least one trial");
  for (std::size_t n : ns)
    if (n < 2) throw ValidationError("scan dimensions must be at least 2");
}

// Extremes of the variance profile on a 257 x 257 grid (exact for constants).
std::pair<double, double> profile_extremes(const Graphon& w) {
  if (const auto* c = std::get_if<ConstantGraphon>(&w.variant())) return {c->value, c->value};
  double lo = w(0.0, 0.0), hi = lo;
  for (int u = 0; u <= 256; ++u)
    for (int v = 0; v <= 256; ++v) {
      const double x = w(u / 256.0, v / 256.0);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  return {lo, hi};
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, int trial) {
  return CounterRng(seed, stream::kTrial, n, static_cast<std::uint64_t>(trial))();
}

NormScanResult norm_scan(const GeneralizedWigner& model, std::span<const std::size_t> ns, int trials,
                         std::uint64_t seed) {
  check_scan_args(ns, trials);
  if (model.mean) throw ValidationError("norm_scan expects mean-zero entries; use mean_norm_scan");
  NormScanResult result;
  const auto [a1, a2] = profile_extremes(model.w);
  result.lower_bracket = std::sqrt(a1);
  result.upper_bracket = std::sqrt(2.0 * a2);
  for (std::size_t n : ns) {
    for (int t = 0; t < trials; ++t) {
      const EnsembleSpec spec{model, n, trial_seed(seed, n, t)};
      const double norm = spectral_norm(eigenvalues_sym(laplacian_of(sample_generalized_wigner(spec))));
      const double nn = static_cast<double>(n);
      result.rows.push_back({n, t, norm, norm / std::sqrt(2.0 * nn * std::log(nn))});
    }
  }
  result.summary = summarize(result.rows, [](const NormScanRow& r) { return r.ratio; });
  return result;
}

MeanNormScanResult mean_norm_scan(const GeneralizedWigner& model, std::span<const std::size_t> ns, int trials,
                                  std::uint64_t seed) {
  check_scan_args(ns, trials);
  if (!model.mean) throw ValidationError("mean_norm_scan needs a mean profile");
  MeanNormScanResult result;
  for (std::size_t n : ns) {
    for (int t = 0; t < trials; ++t) {
      const EnsembleSpec spec{model, n, trial_seed(seed, n, t)};
      const double norm = spectral_norm(eigenvalues_sym(laplacian_of(sample_generalized_wigner(spec))));
      result.rows.push_back({n, t, norm / static_cast<double>(n)});
    }
  }
  const std::size_t top = *std::max_element(ns.begin(), ns.end());
  const EnsembleSpec top_spec{model, top, seed};
  result.limit = spectral_norm(eigenvalues_sym(laplacian_of(expected_matrix(top_spec)))) / static_cast<double>(top);
  result.summary = summarize(result.rows, [](const MeanNormRow& r) { return r.ratio; });
  return result;
}

}  // namespace gspec
