#include "gspec/hom_density.hpp"

#include <cmath>
#include <variant>

#include "gspec/error.hpp"
#include "gspec/simd/kernels.hpp"

namespace gspec {

namespace {

void require_forest(const SimpleGraph& f) {
  if (!f.is_forest()) throw UnsupportedError("homomorphism density is implemented for forests only");
}

}  // namespace

double hom_density_step(const SimpleGraph& forest, const BlockKernel& kernel) {
  require_forest(forest);
  const std::size_t n = kernel.n;
  const std::size_t nv = forest.vertex_count();
  const auto adj = forest.adjacency();
  const double inv_n = 1.0 / static_cast<double>(n);

  // msg[v][b]: density of the subtree below v given v sits in block b.
  std::vector<std::vector<double>> msg(nv, std::vector<double>(n, 1.0));
  std::vector<std::size_t> parent(nv, nv);
  std::vector<char> seen(nv, 0);
  std::vector<double> pushed(n);
  double total = 1.0;
  for (std::size_t root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> order{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t c : adj[order[i]]) {
        if (!seen[c]) {
          seen[c] = 1;
          parent[c] = order[i];
          order.push_back(c);
        }
      }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
      const std::size_t v = order[i];
      simd::matvec(kernel.values, n, n, msg[v], pushed);
      auto& up = msg[parent[v]];
      for (std::size_t b = 0; b < n; ++b) up[b] *= pushed[b] * inv_n;
    }
    total *= simd::sum(msg[root]) * inv_n;
  }
  return total;
}

double hom_density(const SimpleGraph& forest, const Graphon& w) {
  require_forest(forest);
  if (const auto* c = std::get_if<ConstantGraphon>(&w.variant())) {
    return std::pow(c->value, static_cast<double>(forest.edge_count()));
  }
  if (const auto* p = std::get_if<ProductGraphon>(&w.variant())) {
    double t = 1.0;
    for (std::size_t d : forest.degrees()) t *= p->profile.integral_power(static_cast<int>(d));
    return t;
  }
  if (const auto* s = std::get_if<StepGraphon>(&w.variant())) return hom_density_step(forest, s->kernel);
  return hom_density_step(forest, discretize(w, kKernelDiscretizationBlocks));
}

}  // namespace gspec
