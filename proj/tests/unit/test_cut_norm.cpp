#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gspec/cut_norm.hpp"
#include "gspec/error.hpp"
#include "gspec/rng.hpp"

using namespace gspec;

namespace {

BlockKernel random_signed_kernel(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 11, n);
  BlockKernel k = BlockKernel::filled(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = 2.0 * rng.uniform() - 1.0;
      k.at(i, j) = v;
      k.at(j, i) = v;
    }
  return k;
}

BlockKernel random_graphon_kernel(std::size_t n, std::uint64_t seed) {
  BlockKernel k = random_signed_kernel(n, seed);
  for (auto& v : k.values) v = 0.5 * (v + 1.0);
  return k;
}

// Oracle: all 4^n pairs of block subsets.
double brute_cut_norm(const BlockKernel& k) {
  const std::size_t n = k.n;
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    for (std::uint32_t t = 0; t < (1u << n); ++t) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if ((s >> i & 1u) && (t >> j & 1u)) v += k(i, j);
      best = std::max(best, std::abs(v));
    }
  return best / static_cast<double>(n * n);
}

// Oracle: cut distance as the minimum over all relabelings of the brute cut
// norm of the difference.
double brute_cut_distance(const BlockKernel& a, const BlockKernel& b) {
  std::vector<std::size_t> p(a.n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  double best = 1e300;
  do {
    BlockKernel d = BlockKernel::filled(a.n, 0.0);
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t j = 0; j < a.n; ++j) d.at(i, j) = a(i, j) - b(p[i], p[j]);
    best = std::min(best, brute_cut_norm(d));
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

BlockKernel permuted(const BlockKernel& k, const std::vector<std::size_t>& p) {
  BlockKernel out = BlockKernel::filled(k.n, 0.0);
  for (std::size_t i = 0; i < k.n; ++i)
    for (std::size_t j = 0; j < k.n; ++j) out.at(p[i], p[j]) = k(i, j);
  return out;
}

}  // namespace

TEST_CASE("cut norm of simple kernels") {
  CHECK(cut_norm(BlockKernel::filled(3, 0.0), CutNormMode::kExact) == 0.0);
  CHECK(cut_norm(BlockKernel::filled(4, 0.5), CutNormMode::kExact) == doctest::Approx(0.5));
  // Checkerboard +-1 on 2 blocks: best rectangle is a single block.
  CHECK(cut_norm(BlockKernel(2, {1, -1, -1, 1}), CutNormMode::kExact) == doctest::Approx(0.25));
}

TEST_CASE("exact cut norm matches 4^n enumeration") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CAPTURE(n);
      CAPTURE(seed);
      const auto k = random_signed_kernel(n, seed);
      CHECK(cut_norm(k, CutNormMode::kExact) == doctest::Approx(brute_cut_norm(k)).epsilon(1e-13));
    }
}

TEST_CASE("heuristic cut norm agrees with exact on 8-block kernels") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    CAPTURE(seed);
    const auto k = random_signed_kernel(8, seed);
    CHECK(std::abs(cut_norm(k, CutNormMode::kHeuristic) - cut_norm(k, CutNormMode::kExact)) <= 1e-12);
  }
}

TEST_CASE("exact cut norm refuses large kernels") {
  CHECK_THROWS_AS(cut_norm(BlockKernel::filled(17, 0.1), CutNormMode::kExact), CapacityError);
  CHECK(cut_norm(BlockKernel::filled(17, 0.1), CutNormMode::kHeuristic) == doctest::Approx(0.1));
}

TEST_CASE("cut distance between step graphons") {
  const auto a = random_graphon_kernel(4, 3);
  const auto b = random_graphon_kernel(4, 4);
  const auto r = cut_distance_step(Graphon::step(a), Graphon::step(b));
  CHECK(r.exhaustive);
  CHECK(r.value == doctest::Approx(brute_cut_distance(a, b)).epsilon(1e-12));

  // A relabelled copy is at distance zero, and the returned permutation
  // undoes the relabelling.
  const std::vector<std::size_t> p{2, 0, 3, 1};
  const auto pa = permuted(a, p);
  const auto z = cut_distance_step(Graphon::step(a), Graphon::step(pa));
  CHECK(z.value == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(z.permutation == p);
}

TEST_CASE("local permutation search against exhaustive search") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    CAPTURE(seed);
    const auto a = Graphon::step(random_graphon_kernel(6, 20 + seed));
    const auto b = Graphon::step(random_graphon_kernel(6, 40 + seed));
    const double exhaustive = cut_distance_step(a, b, PermutationSearch::kExhaustive).value;
    const double local = cut_distance_step(a, b, PermutationSearch::kLocalSearch).value;
    // Local search minimizes over a subset of permutations.
    CHECK(local >= exhaustive - 1e-15);
    CHECK(local <= exhaustive + 0.05);
  }
  // Relabelled copies are found exactly.
  const auto k = random_graphon_kernel(10, 7);
  const auto r = cut_distance_step(Graphon::step(k), Graphon::step(permuted(k, {3, 1, 4, 0, 5, 9, 2, 6, 8, 7})));
  CHECK_FALSE(r.exhaustive);
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("cut distance validation") {
  CHECK_THROWS_AS(cut_distance_step(Graphon::step(BlockKernel::filled(2, 0.1)), Graphon::step(BlockKernel::filled(3, 0.1))),
                  ValidationError);
  CHECK_THROWS_AS(cut_distance_step(Graphon::product(Profile1D::sqrt()), Graphon::constant(0.1)), ValidationError);
  CHECK_THROWS_AS(cut_distance_step(Graphon::step(BlockKernel::filled(9, 0.1)), Graphon::step(BlockKernel::filled(9, 0.2)),
                                    PermutationSearch::kExhaustive),
                  CapacityError);
  CHECK(cut_distance_step(Graphon::constant(0.2), Graphon::constant(0.5)).value == doctest::Approx(0.3));
}
