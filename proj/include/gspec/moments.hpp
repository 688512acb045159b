#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gspec/graphon.hpp"
#include "gspec/trees.hpp"

namespace gspec {

inline constexpr int kMaxAdjacencyMomentOrder = 20;
inline constexpr int kMaxLaplacianMomentOrder = 12;
inline constexpr int kMaxYnMomentOrder = 20;

enum class MomentSource { kAdjacency, kLaplacian, kYn, kEmpirical, kFreeConv };

std::string_view to_string(MomentSource source);
MomentSource moment_source_from_string(std::string_view name);

struct MomentReport {
  MomentSource source = MomentSource::kLaplacian;
  std::map<int, double> entries;
  nlohmann::json graphon;   // descriptor of the graphon, null when not applicable
  nlohmann::json metadata;  // seed, N, trials for empirical reports

  nlohmann::json to_json() const;
};

// Limit moment of the scaled adjacency ESD: sum over the rooted planar trees
// with two_k/2 edges of t(T, W). Odd orders are 0.
double adjacency_moment(int two_k, const Graphon& w);

// Limit moment of the centered, scaled Laplacian ESD: for every word in
// {A, Y}^{two_k} with an even number m of A's and every planar tree on
// m/2 edges, adds t(T~, W) f(T~). Odd orders are 0. Orders up to 12.
double laplacian_moment(int two_k, const Graphon& w);

// Contribution of a single word to laplacian_moment.
double laplacian_word_contribution(const LaplacianWord& word, const Graphon& w);

// k-th moment of the diagonal part Y_N: gaussian_moment(k) t(star_{k/2}, W).
double yn_moment(int k, const Graphon& w);

MomentReport moment_table(std::span<const int> orders, const Graphon& w, MomentSource source);

}  // namespace gspec
