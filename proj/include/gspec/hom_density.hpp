#pragma once

#include "gspec/graph.hpp"
#include "gspec/graphon.hpp"

namespace gspec {

// Kernel graphons are discretized on this many blocks before the tree DP.
inline constexpr std::size_t kKernelDiscretizationBlocks = 512;

// Homomorphism density t(F, W) for a forest F.
//
//  - constant c:   c^|E|
//  - product r:    prod_v \int r^deg(v)
//  - step:         exact leaf-to-root message passing, O(|V| n^2)
//  - kernel:       step DP on a midpoint discretization
//
// Throws UnsupportedError when F has a cycle.
double hom_density(const SimpleGraph& forest, const Graphon& w);

// Step-kernel DP exposed for testing against brute force.
double hom_density_step(const SimpleGraph& forest, const BlockKernel& kernel);

}  // namespace gspec
