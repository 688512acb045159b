#include "gspec/moments.hpp"

#include <unordered_map>

#include "gspec/error.hpp"
#include "gspec/graphon_json.hpp"
#include "gspec/hom_density.hpp"

namespace gspec {

namespace {

// Kernel graphons are discretized once per moment evaluation rather than per
// tree.
Graphon prepared(const Graphon& w) {
  if (w.is_kernel()) return Graphon::step(discretize(w, kKernelDiscretizationBlocks));
  return w;
}

// Densities of isomorphic trees coincide, so each unlabeled shape is
// integrated once.
class DensityCache {
 public:
  explicit DensityCache(const Graphon& w) : w_(w) {}

  double operator()(const SimpleGraph& tree) {
    auto code = canonical_forest_code(tree);
    if (auto it = cache_.find(code); it != cache_.end()) return it->second;
    const double t = hom_density(tree, w_);
    cache_.emplace(std::move(code), t);
    return t;
  }

 private:
  const Graphon& w_;
  std::unordered_map<std::string, double> cache_;
};

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

void check_order(int order, int cap, const char* what) {
  if (order < 0) throw ValidationError(std::string(what) + " order must be nonnegative");
  if (order > cap) {
    throw CapacityError(std::string(what) + " moments are supported up to order " + std::to_string(cap) +
                        ", got " + std::to_string(order));
  }
}

double word_contribution(const LaplacianWord& word, const std::vector<RootedPlanarTree>& trees,
                         DensityCache& density) {
  std::vector<double> terms;
  for (const auto& tree : trees) {
    const ModifiedTree mt = modify_tree(tree, word);
    if (!mt.valid) continue;
    terms.push_back(f_value(mt) * density(mt.to_graph()));
  }
  return pairwise_sum(terms);
}

}  // namespace

std::string_view to_string(MomentSource source) {
  switch (source) {
    case MomentSource::kAdjacency: return "adjacency";
    case MomentSource::kLaplacian: return "laplacian";
    case MomentSource::kYn: return "yn";
    case MomentSource::kEmpirical: return "empirical";
    case MomentSource::kFreeConv: return "freeconv";
  }
  return "unknown";
}

MomentSource moment_source_from_string(std::string_view name) {
  for (auto s : {MomentSource::kAdjacency, MomentSource::kLaplacian, MomentSource::kYn, MomentSource::kEmpirical,
                 MomentSource::kFreeConv}) {
    if (to_string(s) == name) return s;
  }
  throw ValidationError("unknown moment source '" + std::string(name) + "'");
}

nlohmann::json MomentReport::to_json() const {
  nlohmann::json moments = nlohmann::json::object();
  for (const auto& [k, v] : entries) moments[std::to_string(k)] = v;
  nlohmann::json out{{"source", to_string(source)}, {"graphon", graphon}, {"moments", moments}};
  if (!metadata.is_null()) out["metadata"] = metadata;
  return out;
}

double adjacency_moment(int two_k, const Graphon& w) {
  check_order(two_k, kMaxAdjacencyMomentOrder, "adjacency");
  if (two_k % 2 != 0) return 0.0;
  const Graphon g = prepared(w);
  DensityCache density(g);
  std::vector<double> terms;
  for (const auto& tree : enumerate_trees(two_k / 2)) terms.push_back(density(tree.to_graph()));
  return pairwise_sum(terms);
}

double laplacian_word_contribution(const LaplacianWord& word, const Graphon& w) {
  if (word.a_count() % 2 != 0) return 0.0;
  const Graphon g = prepared(w);
  DensityCache density(g);
  return word_contribution(word, enumerate_trees(word.a_count() / 2), density);
}

double laplacian_moment(int two_k, const Graphon& w) {
  check_order(two_k, kMaxLaplacianMomentOrder, "Laplacian");
  if (two_k % 2 != 0) return 0.0;
  const Graphon g = prepared(w);
  DensityCache density(g);
  std::vector<std::vector<RootedPlanarTree>> trees;
  for (int e = 0; e <= two_k / 2; ++e) trees.push_back(enumerate_trees(e));

  std::vector<double> terms;
  for (const auto& word : enumerate_words(two_k)) {
    if (word.a_count() % 2 != 0) continue;
    terms.push_back(word_contribution(word, trees[static_cast<std::size_t>(word.a_count() / 2)], density));
  }
  return pairwise_sum(terms);
}

double yn_moment(int k, const Graphon& w) {
  check_order(k, kMaxYnMomentOrder, "Y_N");
  if (k % 2 != 0) return 0.0;
  return gaussian_moment(k) * hom_density(SimpleGraph::star(static_cast<std::size_t>(k / 2)), prepared(w));
}

MomentReport moment_table(std::span<const int> orders, const Graphon& w, MomentSource source) {
  MomentReport report;
  report.source = source;
  report.graphon = to_json(w);
  for (int k : orders) {
    switch (source) {
      case MomentSource::kAdjacency: report.entries[k] = adjacency_moment(k, w); break;
      case MomentSource::kLaplacian: report.entries[k] = laplacian_moment(k, w); break;
      case MomentSource::kYn: report.entries[k] = yn_moment(k, w); break;
      default: throw ValidationError("moment_table computes theoretical sources only");
    }
  }
  return report;
}

}  // namespace gspec
