#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace gspec {

// Finite simple graph: no loops, no multi-edges.
class SimpleGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit SimpleGraph(std::size_t vertices = 0) : vertices_(vertices) {}
  SimpleGraph(std::size_t vertices, const std::vector<Edge>& edges);

  static SimpleGraph path(std::size_t vertices);
  // Star with `leaves` leaves around vertex 0.
  static SimpleGraph star(std::size_t leaves);

  void add_edge(std::size_t u, std::size_t v);

  std::size_t vertex_count() const { return vertices_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<std::size_t>> adjacency() const;

  bool is_forest() const;

  // Same graph with vertex v renamed to perm[v].
  SimpleGraph relabeled(const std::vector<std::size_t>& perm) const;

 private:
  std::size_t vertices_;
  std::vector<Edge> edges_;
};

// Isomorphism-invariant code of an unlabeled forest (AHU encoding of each
// component rooted at its center, components sorted). Equal codes iff the
// forests are isomorphic.
std::string canonical_forest_code(const SimpleGraph& forest);

}  // namespace gspec
