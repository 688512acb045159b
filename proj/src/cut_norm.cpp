#include "gspec/cut_norm.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <limits>
#include <numeric>

#include "gspec/error.hpp"
#include "gspec/rng.hpp"
#include "gspec/simd/kernels.hpp"

namespace gspec {

namespace {

double exact_block_cut(const BlockKernel& k) {
  const std::size_t n = k.n;
  if (n > kMaxExactCutNormBlocks) {
    throw CapacityError("exact cut norm supports at most " +
                        std::to_string(kMaxExactCutNormBlocks) + " blocks, got " +
                        std::to_string(n));
  }
  // Walk all row subsets S in Gray-code order, keeping the column sums of S.
  // For fixed S the best T takes exactly the columns of one sign.
  std::vector<double> col(n, 0.0);
  double best = 0.0;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::uint64_t prev = 0;
  for (std::uint64_t g = 1; g < count; ++g) {
    const std::uint64_t gray = g ^ (g >> 1);
    const std::uint64_t flipped = gray ^ prev;
    const auto i = static_cast<std::size_t>(std::countr_zero(flipped));
    simd::axpy((gray & flipped) ? 1.0 : -1.0, k.row(i), col);
    prev = gray;
    double pos = 0.0, neg = 0.0;
    simd::split_sum(col, pos, neg);
    best = std::max({best, pos, -neg});
  }
  return best;
}

// One alternating ascent of s * sum_{S x T} K from the row set `rows`.
double alternate(const BlockKernel& k, std::vector<char> rows, double sign) {
  const std::size_t n = k.n;
  std::vector<double> col(n), row(n);
  std::vector<char> cols(n, 0);
  double value = -1.0;
  for (int iter = 0; iter < 4 * static_cast<int>(n) + 8; ++iter) {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (rows[i]) simd::axpy(1.0, k.row(i), col);
    for (std::size_t j = 0; j < n; ++j) cols[j] = sign * col[j] > 0.0;

    double next = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (cols[j]) r += k(i, j);
      row[i] = r;
      rows[i] = sign * r > 0.0;
      if (rows[i]) next += sign * r;
    }
    if (next <= value) break;
    value = next;
  }
  return std::max(value, 0.0);
}

double heuristic_block_cut(const BlockKernel& k, std::uint64_t seed) {
  const std::size_t n = k.n;
  std::vector<std::vector<char>> starts;
  starts.emplace_back(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> s(n, 0);
    s[i] = 1;
    starts.push_back(std::move(s));
  }
  CounterRng rng(seed, stream::kSearch);
  for (int r = 0; r < kCutNormRestarts; ++r) {
    std::vector<char> s(n);
    for (auto& b : s) b = static_cast<char>(rng() >> 63);
    starts.push_back(std::move(s));
  }
  double best = 0.0;
  for (const auto& s : starts) {
    best = std::max(best, alternate(k, s, 1.0));
    best = std::max(best, alternate(k, s, -1.0));
  }
  return best;
}

BlockKernel require_blocks(const Graphon& w) {
  auto k = as_block_kernel(w);
  if (!k) throw ValidationError("cut distance requires step or constant graphons, got " + w.describe());
  return *k;
}

double permuted_cut(const BlockKernel& a, const BlockKernel& b, const std::vector<std::size_t>& perm,
                    BlockKernel& scratch) {
  const std::size_t n = a.n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scratch.at(i, j) = a(i, j) - b(perm[i], perm[j]);
  return cut_norm(scratch, n <= kMaxExactCutNormBlocks ? CutNormMode::kExact : CutNormMode::kHeuristic);
}

std::vector<std::size_t> degree_alignment(const BlockKernel& a, const BlockKernel& b) {
  const std::size_t n = a.n;
  auto order = [n](const BlockKernel& k) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<double> deg(n);
    for (std::size_t i = 0; i < n; ++i) deg[i] = simd::sum(k.row(i));
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return deg[x] < deg[y]; });
    return idx;
  };
  const auto oa = order(a);
  const auto ob = order(b);
  std::vector<std::size_t> perm(n);
  for (std::size_t r = 0; r < n; ++r) perm[oa[r]] = ob[r];
  return perm;
}

}  // namespace

double cut_norm(const BlockKernel& kernel, CutNormMode mode, std::uint64_t seed) {
  if (kernel.n == 0) return 0.0;
  const double area = static_cast<double>(kernel.n) * static_cast<double>(kernel.n);
  const double raw = mode == CutNormMode::kExact ? exact_block_cut(kernel) : heuristic_block_cut(kernel, seed);
  return raw / area;
}

CutDistanceResult cut_distance_step(const Graphon& w1, const Graphon& w2, PermutationSearch search) {
  const BlockKernel a = require_blocks(w1);
  const BlockKernel b = require_blocks(w2);
  if (a.n != b.n) {
    throw ValidationError("cut distance needs equal block counts, got " + std::to_string(a.n) + " and " +
                          std::to_string(b.n));
  }
  const std::size_t n = a.n;
  if (search == PermutationSearch::kAuto) {
    search = n <= kMaxExhaustivePermutationBlocks ? PermutationSearch::kExhaustive : PermutationSearch::kLocalSearch;
  }
  BlockKernel scratch = BlockKernel::filled(n, 0.0);
  CutDistanceResult result;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  if (search == PermutationSearch::kExhaustive) {
    if (n > kMaxExhaustivePermutationBlocks) {
      throw CapacityError("exhaustive permutation search supports at most " +
                          std::to_string(kMaxExhaustivePermutationBlocks) + " blocks");
    }
    result.value = std::numeric_limits<double>::infinity();
    result.exhaustive = true;
    do {
      const double v = permuted_cut(a, b, perm, scratch);
      if (v < result.value) {
        result.value = v;
        result.permutation = perm;
      }
    } while (result.value > 0.0 && std::next_permutation(perm.begin(), perm.end()));
    return result;
  }

  std::vector<std::vector<std::size_t>> starts{perm, degree_alignment(a, b)};
  CounterRng rng(0x5eedULL, stream::kSearch, n);
  for (int r = 0; r < 8; ++r) {
    auto p = perm;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
    starts.push_back(std::move(p));
  }
  result.value = std::numeric_limits<double>::infinity();
  for (auto current : starts) {
    double value = permuted_cut(a, b, current, scratch);
    bool improved = true;
    while (improved && value > 0.0) {
      improved = false;
      for (std::size_t i = 0; i < n && !improved; ++i) {
        for (std::size_t j = i + 1; j < n && !improved; ++j) {
          std::swap(current[i], current[j]);
          const double v = permuted_cut(a, b, current, scratch);
          if (v < value - 1e-15) {
            value = v;
            improved = true;
          } else {
            std::swap(current[i], current[j]);
          }
        }
      }
    }
    if (value < result.value) {
      result.value = value;
      result.permutation = current;
    }
  }
  return result;
}

}  // namespace gspec
