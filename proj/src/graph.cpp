#include "gspec/graph.hpp"

#include <algorithm>
#include <numeric>

#include "gspec/error.hpp"

namespace gspec {

SimpleGraph::SimpleGraph(std::size_t vertices, const std::vector<Edge>& edges) : vertices_(vertices) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

SimpleGraph SimpleGraph::path(std::size_t vertices) {
  SimpleGraph g(vertices);
  for (std::size_t v = 1; v < vertices; ++v) g.add_edge(v - 1, v);
  return g;
}

SimpleGraph SimpleGraph::star(std::size_t leaves) {
  SimpleGraph g(leaves + 1);
  for (std::size_t v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

void SimpleGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= vertices_ || v >= vertices_) throw ValidationError("edge references a missing vertex");
  if (u == v) throw ValidationError("self-loops are not allowed");
  const Edge e{std::min(u, v), std::max(u, v)};
  if (std::find(edges_.begin(), edges_.end(), e) != edges_.end()) {
    throw ValidationError("duplicate edge");
  }
  edges_.push_back(e);
}

std::vector<std::size_t> SimpleGraph::degrees() const {
  std::vector<std::size_t> deg(vertices_, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::vector<std::vector<std::size_t>> SimpleGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices_);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool SimpleGraph::is_forest() const {
  std::vector<std::size_t> parent(vertices_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : edges_) {
    const std::size_t a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

SimpleGraph SimpleGraph::relabeled(const std::vector<std::size_t>& perm) const {
  if (perm.size() != vertices_) throw ValidationError("relabeling must cover every vertex");
  SimpleGraph g(vertices_);
  for (const auto& [u, v] : edges_) g.add_edge(perm[u], perm[v]);
  return g;
}

namespace {

std::string rooted_code(const std::vector<std::vector<std::size_t>>& adj, std::size_t v,
                        std::size_t parent) {
  std::vector<std::string> kids;
  for (std::size_t c : adj[v]) {
    if (c != parent) kids.push_back(rooted_code(adj, c, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

}  // namespace

std::string canonical_forest_code(const SimpleGraph& forest) {
  if (!forest.is_forest()) throw UnsupportedError("canonical code requires a forest");
  const auto adj = forest.adjacency();
  const std::size_t n = forest.vertex_count();
  std::vector<int> component(n, -1);
  std::vector<std::string> codes;
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    std::vector<std::size_t> members{s};
    component[s] = static_cast<int>(codes.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t c : adj[members[i]]) {
        if (component[c] < 0) {
          component[c] = component[s];
          members.push_back(c);
        }
      }
    }
    // Peel leaves to find the one or two centers.
    std::vector<std::size_t> deg(n, 0);
    std::vector<std::size_t> layer;
    for (std::size_t v : members) {
      deg[v] = adj[v].size();
      if (deg[v] <= 1) layer.push_back(v);
    }
    std::size_t remaining = members.size();
    while (remaining > 2) {
      remaining -= layer.size();
      std::vector<std::size_t> next;
      for (std::size_t v : layer) {
        for (std::size_t c : adj[v]) {
          if (--deg[c] == 1) next.push_back(c);
        }
      }
      layer = std::move(next);
    }
    std::string best;
    for (std::size_t c : layer) {
      std::string code = rooted_code(adj, c, n);
      if (best.empty() || code < best) best = std::move(code);
    }
    codes.push_back(std::move(best));
  }
  std::sort(codes.begin(), codes.end());
  std::string out;
  for (const auto& c : codes) out += c;
  return out;
}

}  // namespace gspec
