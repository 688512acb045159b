#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gspec/graph.hpp"

namespace gspec {

inline constexpr int kMaxTreeEdges = 12;
inline constexpr int kMaxWordLength = 20;
inline constexpr int kMaxGaussianMomentOrder = 40;

std::uint64_t catalan(int k);

// Ordered rooted tree encoded by a Dyck word over '(' and ')'. Vertices are
// labelled 0..k in depth-first preorder, the root being 0.
class RootedPlanarTree {
 public:
  static RootedPlanarTree from_dyck(std::string_view dyck);
  // Inverse of dfs_walk(): rebuilds the tree from a closed depth-first walk.
  static RootedPlanarTree from_walk(std::span<const std::size_t> walk);

  int edge_count() const { return static_cast<int>(dyck_.size() / 2); }
  std::size_t vertex_count() const { return children_.size(); }
  const std::string& dyck() const { return dyck_; }
  const std::vector<std::vector<std::size_t>>& children() const { return children_; }
  // i_1 .. i_{2k+1}; starts and ends at the root, crosses every edge twice.
  const std::vector<std::size_t>& dfs_walk() const { return walk_; }

  SimpleGraph to_graph() const;

 private:
  RootedPlanarTree() = default;
  std::string dyck_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> walk_;
};

// All rooted planar trees with k edges in lexicographic Dyck order
// ('(' < ')'); Catalan(k) of them. CapacityError for k > 12.
std::vector<RootedPlanarTree> enumerate_trees(int k);

// A word over {A, Y}, read as A^{m_1} Y^{n_1} A^{m_2} Y^{n_2} ... . The
// canonical run pairs start with the leading A-run (m_1 = 0 when the word
// starts with Y) and end with the last Y-run (n = 0 when the word ends in A).
class LaplacianWord {
 public:
  using RunPair = std::pair<int, int>;  // (m_j, n_j)

  static LaplacianWord from_string(std::string_view letters);
  static LaplacianWord from_pairs(std::span<const RunPair> pairs);

  const std::string& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  const std::vector<RunPair>& pairs() const { return pairs_; }
  int a_count() const { return a_count_; }
  int y_count() const { return static_cast<int>(letters_.size()) - a_count_; }

 private:
  LaplacianWord() = default;
  std::string letters_;
  std::vector<RunPair> pairs_;
  int a_count_ = 0;
};

// All 2^{two_k} words of length two_k, lexicographic with A < Y.
std::vector<LaplacianWord> enumerate_words(int two_k);

struct ModifiedTree {
  RootedPlanarTree base;
  // Y-letters landing on each base vertex.
  std::vector<int> visits;
  // Leaves attached to each base vertex (half of visits) when valid.
  std::vector<int> leaf_mult;
  // False when some vertex receives an odd number of Y-letters.
  bool valid = false;

  std::size_t vertex_count() const;
  // Base tree with leaf_mult[s] extra leaves hung on vertex s, appended after
  // the base vertices.
  SimpleGraph to_graph() const;
};

// Attaches the Y-runs of `word` to the depth-first walk of `tree`: the run
// n_j lands on walk position 1 + m_1 + ... + m_j, with position m + 1
// identified with position 1. Requires word.a_count() == 2 * edges(tree).
ModifiedTree modify_tree(const RootedPlanarTree& tree, const LaplacianWord& word);

// E[Z^t] for Z ~ N(0,1): 0 for odd t, (t-1)!! for even t. t <= 40.
double gaussian_moment(int t);

// prod over base vertices of gaussian_moment(2 * leaf_mult[s]); 0 if invalid.
double f_value(const ModifiedTree& tree);

}  // namespace gspec
