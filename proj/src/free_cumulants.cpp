#include <functional>

#include "gspec/error.hpp"
#include "gspec/free_convolution.hpp"
#include "gspec/trees.hpp"

namespace gspec {

namespace {

void check_order(int k, int cap) {
  if (k < 0) throw ValidationError("order must be nonnegative");
  if (k > cap) throw CapacityError("order " + std::to_string(k) + " exceeds the supported maximum " + std::to_string(cap));
}

// Decomposing by the block that contains the first point: a block of size s
// splits the remaining n - s points into s independent non-crossing gaps, so
//   m_n = sum_s kappa_s sum_{i_1 + .. + i_s = n - s} m_{i_1} ... m_{i_s}.
// conv[s][r] caches the s-fold convolution sum of m at total r.
double next_moment(std::span<const double> kappa, const std::vector<double>& m, int n) {
  std::vector<std::vector<double>> conv(static_cast<std::size_t>(n) + 1,
                                        std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  conv[0][0] = 1.0;
  for (int s = 1; s <= n; ++s)
    for (int r = 0; r <= n - s; ++r)
      for (int i = 0; i <= r; ++i) conv[s][r] += m[i] * conv[s - 1][r - i];
  double total = 0.0;
  for (int s = 1; s <= n; ++s) {
    const double ks = static_cast<std::size_t>(s) <= kappa.size() ? kappa[s - 1] : 0.0;
    if (ks != 0.0) total += ks * conv[s][n - s];
  }
  return total;
}

}  // namespace

double moments_from_free_cumulants(std::span<const double> kappa, int k) {
  check_order(k, kMaxFreeCumulantOrder);
  std::vector<double> m{1.0};
  for (int n = 1; n <= k; ++n) m.push_back(next_moment(kappa, m, n));
  return m[static_cast<std::size_t>(k)];
}

std::vector<double> free_cumulants_from_moments(std::span<const double> moments, int k) {
  check_order(k, kMaxFreeCumulantOrder);
  if (moments.size() < static_cast<std::size_t>(k)) throw ValidationError("need moments up to the requested order");
  std::vector<double> kappa(static_cast<std::size_t>(k), 0.0);
  std::vector<double> m{1.0};
  for (int n = 1; n <= k; ++n) {
    // With kappa_n still 0 the recursion gives every term except kappa_n itself.
    kappa[n - 1] = moments[n - 1] - next_moment(kappa, m, n);
    m.push_back(moments[n - 1]);
  }
  return kappa;
}

std::vector<std::vector<std::vector<int>>> enumerate_noncrossing_partitions(int k) {
  check_order(k, 12);
  using Partition = std::vector<std::vector<int>>;
  std::vector<Partition> out;
  Partition current;
  // Places point p either in a new block or in an open block; a block may take
  // p only if no point since its last element belongs to a block still open
  // after it (the non-crossing condition).
  std::function<void(int)> place = [&](int p) {
    if (p == k) {
      out.push_back(current);
      return;
    }
    current.push_back({p});
    place(p + 1);
    current.pop_back();
    for (std::size_t b = 0; b < current.size(); ++b) {
      const int last = current[b].back();
      bool crossing = false;
      for (std::size_t c = 0; c < current.size() && !crossing; ++c) {
        if (c == b) continue;
        // A block with elements both inside (last, p) and outside it would
        // cross; blocks entirely inside the gap are fine.
        bool inside = false, outside_before = false;
        for (int e : current[c]) {
          if (e > last && e < p) inside = true;
          if (e < last) outside_before = true;
        }
        crossing = inside && outside_before;
      }
      if (crossing) continue;
      current[b].push_back(p);
      place(p + 1);
      current[b].pop_back();
    }
  };
  place(0);
  return out;
}

std::vector<double> gamma_m_free_cumulants(int k) {
  check_order(k, kMaxFreeCumulantOrder);
  std::vector<double> gaussian(static_cast<std::size_t>(k));
  for (int n = 1; n <= k; ++n) gaussian[n - 1] = gaussian_moment(n);
  auto kappa = free_cumulants_from_moments(gaussian, k);
  if (k >= 2) kappa[1] += 1.0;
  return kappa;
}

}  // namespace gspec
