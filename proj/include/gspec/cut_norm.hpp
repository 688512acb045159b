#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gspec/graphon.hpp"

namespace gspec {

enum class CutNormMode { kExact, kHeuristic };

inline constexpr std::size_t kMaxExactCutNormBlocks = 16;
inline constexpr int kCutNormRestarts = 32;

// sup_{S,T} |\int_{S x T} K| for a step kernel with n equal blocks. For step
// kernels the supremum is attained on unions of blocks.
//
// kExact enumerates every block subset S (n <= 16, CapacityError beyond) and
// takes the optimal T for each S in closed form. kHeuristic alternates
// between the two sides from 32 seeded random starts (plus the full set and
// the singletons) and returns a lower bound on the exact value.
double cut_norm(const BlockKernel& kernel, CutNormMode mode, std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

enum class PermutationSearch { kAuto, kExhaustive, kLocalSearch };

inline constexpr std::size_t kMaxExhaustivePermutationBlocks = 8;

struct CutDistanceResult {
  double value = 0.0;
  // W2 block sigma[i] is aligned with W1 block i.
  std::vector<std::size_t> permutation;
  // True when every block permutation was examined.
  bool exhaustive = false;
};

// min over block permutations sigma of d_cut(W1, W2^sigma) for step graphons
// with equal block counts (constant graphons count as one block). This is an
// upper bound on the relabeling-invariant cut distance; with kLocalSearch it
// is additionally an upper bound on the best block permutation.
CutDistanceResult cut_distance_step(const Graphon& w1, const Graphon& w2,
                                    PermutationSearch search = PermutationSearch::kAuto);

}  // namespace gspec
