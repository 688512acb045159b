#include <algorithm>
#include <cmath>

#include "gspec/error.hpp"
#include "gspec/spectral.hpp"

namespace gspec {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw ValidationError("empirical CDF needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto k = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(k) / static_cast<double>(sorted_.size());
}

namespace {

// Both differences G(x) - F(x + eps) and F(x - eps) - G(x) are right-continuous
// step functions, so their suprema are attained at a breakpoint.
bool levy_holds(const EmpiricalCdf& f, const EmpiricalCdf& g, double eps) {
  auto upper_ok = [&](double x) { return g(x) <= f(x + eps) + eps; };
  auto lower_ok = [&](double x) { return f(x - eps) - eps <= g(x); };
  for (double t : g.support())
    if (!upper_ok(t) || !lower_ok(t)) return false;
  for (double t : f.support())
    if (!upper_ok(t - eps) || !lower_ok(t + eps)) return false;
  return true;
}

}  // namespace

double levy_distance(const EmpiricalCdf& f, const EmpiricalCdf& g) {
  if (levy_holds(f, g, 0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > kLevyTolerance) {
    const double mid = 0.5 * (lo + hi);
    (levy_holds(f, g, mid) ? hi : lo) = mid;
  }
  return hi;
}

double ks_distance(const EmpiricalCdf& f, const EmpiricalCdf& g) {
  double d = 0.0;
  for (const auto* s : {&f.support(), &g.support()})
    for (double t : *s) d = std::max(d, std::abs(f(t) - g(t)));
  return d;
}

double ks_distance(const EmpiricalCdf& f, const std::function<double(double)>& cdf) {
  const auto& x = f.support();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = cdf(x[i]);
    d = std::max({d, std::abs((i + 1) / n - c), std::abs(i / n - c)});
  }
  return d;
}

}  // namespace gspec
