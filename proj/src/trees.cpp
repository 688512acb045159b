#include "gspec/trees.hpp"

#include <algorithm>

#include "gspec/error.hpp"

namespace gspec {

std::uint64_t catalan(int k) {
  if (k < 0) throw ValidationError("catalan index must be nonnegative");
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// ------------------------------------------------------------ planar trees

RootedPlanarTree RootedPlanarTree::from_dyck(std::string_view dyck) {
  RootedPlanarTree t;
  t.dyck_ = std::string(dyck);
  t.children_.emplace_back();
  t.walk_.push_back(0);
  std::vector<std::size_t> stack{0};
  for (char c : dyck) {
    if (c == '(') {
      const std::size_t v = t.children_.size();
      t.children_.emplace_back();
      t.children_[stack.back()].push_back(v);
      stack.push_back(v);
    } else if (c == ')') {
      if (stack.size() < 2) throw ValidationError("Dyck word has a negative prefix: " + std::string(dyck));
      stack.pop_back();
    } else {
      throw ValidationError("Dyck word may only contain '(' and ')'");
    }
    t.walk_.push_back(stack.back());
  }
  if (stack.size() != 1) throw ValidationError("Dyck word is unbalanced: " + std::string(dyck));
  return t;
}

RootedPlanarTree RootedPlanarTree::from_walk(std::span<const std::size_t> walk) {
  if (walk.empty() || walk.front() != walk.back()) {
    throw ValidationError("depth-first walk must be closed");
  }
  std::string dyck;
  std::vector<std::size_t> stack{walk.front()};
  std::vector<std::size_t> seen{walk.front()};
  for (std::size_t t = 1; t < walk.size(); ++t) {
    const std::size_t v = walk[t];
    if (stack.size() >= 2 && stack[stack.size() - 2] == v) {
      stack.pop_back();
      dyck += ')';
    } else if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
      seen.push_back(v);
      stack.push_back(v);
      dyck += '(';
    } else {
      throw ValidationError("walk is not a depth-first traversal of a tree");
    }
  }
  return from_dyck(dyck);
}

SimpleGraph RootedPlanarTree::to_graph() const {
  SimpleGraph g(vertex_count());
  for (std::size_t v = 0; v < children_.size(); ++v)
    for (std::size_t c : children_[v]) g.add_edge(v, c);
  return g;
}

namespace {

void grow_dyck(std::string& prefix, int open, int close, int k, std::vector<RootedPlanarTree>& out) {
  if (close == k) {
    out.push_back(RootedPlanarTree::from_dyck(prefix));
    return;
  }
  if (open < k) {
    prefix.push_back('(');
    grow_dyck(prefix, open + 1, close, k, out);
    prefix.pop_back();
  }
  if (close < open) {
    prefix.push_back(')');
    grow_dyck(prefix, open, close + 1, k, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<RootedPlanarTree> enumerate_trees(int k) {
  if (k < 0) throw ValidationError("tree edge count must be nonnegative");
  if (k > kMaxTreeEdges) {
    throw CapacityError("tree enumeration supports at most " + std::to_string(kMaxTreeEdges) +
                        " edges, got " + std::to_string(k));
  }
  std::vector<RootedPlanarTree> out;
  out.reserve(catalan(k));
  std::string prefix;
  grow_dyck(prefix, 0, 0, k, out);
  return out;
}

// ---------------------------------------------------------------- words

LaplacianWord LaplacianWord::from_string(std::string_view letters) {
  LaplacianWord w;
  w.letters_ = std::string(letters);
  int m = 0, n = 0;
  bool in_y = false;
  for (char c : letters) {
    if (c == 'A') {
      if (in_y) {
        w.pairs_.emplace_back(m, n);
        m = n = 0;
        in_y = false;
      }
      ++m;
      ++w.a_count_;
    } else if (c == 'Y') {
      in_y = true;
      ++n;
    } else {
      throw ValidationError("Laplacian words use only the letters A and Y");
    }
  }
  if (m > 0 || n > 0) w.pairs_.emplace_back(m, n);
  return w;
}

LaplacianWord LaplacianWord::from_pairs(std::span<const RunPair> pairs) {
  std::string letters;
  for (const auto& [m, n] : pairs) {
    if (m < 0 || n < 0) throw ValidationError("run lengths must be nonnegative");
    letters.append(static_cast<std::size_t>(m), 'A');
    letters.append(static_cast<std::size_t>(n), 'Y');
  }
  return from_string(letters);
}

std::vector<LaplacianWord> enumerate_words(int two_k) {
  if (two_k < 0 || two_k % 2 != 0) {
    throw ValidationError("word length must be a nonnegative even number, got " + std::to_string(two_k));
  }
  if (two_k > kMaxWordLength) {
    throw ValidationError("word length is limited to " + std::to_string(kMaxWordLength) + ", got " +
                          std::to_string(two_k));
  }
  const std::uint64_t count = std::uint64_t{1} << two_k;
  std::vector<LaplacianWord> out;
  out.reserve(count);
  std::string letters(static_cast<std::size_t>(two_k), 'A');
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (int p = 0; p < two_k; ++p) letters[p] = ((mask >> (two_k - 1 - p)) & 1U) ? 'Y' : 'A';
    out.push_back(LaplacianWord::from_string(letters));
  }
  return out;
}

// -------------------------------------------------------- modified trees

std::size_t ModifiedTree::vertex_count() const {
  std::size_t n = base.vertex_count();
  for (int l : leaf_mult) n += static_cast<std::size_t>(l);
  return n;
}

SimpleGraph ModifiedTree::to_graph() const {
  SimpleGraph g = base.to_graph();
  g = SimpleGraph(vertex_count(), g.edges());
  std::size_t next = base.vertex_count();
  for (std::size_t s = 0; s < leaf_mult.size(); ++s)
    for (int l = 0; l < leaf_mult[s]; ++l) g.add_edge(s, next++);
  return g;
}

ModifiedTree modify_tree(const RootedPlanarTree& tree, const LaplacianWord& word) {
  const int m = word.a_count();
  if (m != 2 * tree.edge_count()) {
    throw ValidationError("word has " + std::to_string(m) + " A-letters but the tree has " +
                          std::to_string(tree.edge_count()) + " edges");
  }
  ModifiedTree out{tree, std::vector<int>(tree.vertex_count(), 0), std::vector<int>(tree.vertex_count(), 0), true};
  const auto& walk = tree.dfs_walk();
  int position = 1;
  for (const auto& [mj, nj] : word.pairs()) {
    position += mj;
    // walk[m] == walk[0], which realizes the identification of m+1 with 1.
    out.visits[walk[static_cast<std::size_t>(position - 1)]] += nj;
  }
  for (std::size_t s = 0; s < out.visits.size(); ++s) {
    if (out.visits[s] % 2 != 0) out.valid = false;
  }
  if (out.valid) {
    for (std::size_t s = 0; s < out.visits.size(); ++s) out.leaf_mult[s] = out.visits[s] / 2;
  }
  return out;
}

double gaussian_moment(int t) {
  if (t < 0 || t > kMaxGaussianMomentOrder) {
    throw ValidationError("Gaussian moment order must lie in [0, 40], got " + std::to_string(t));
  }
  if (t % 2 != 0) return 0.0;
  double v = 1.0;
  for (int j = t - 1; j > 1; j -= 2) v *= j;
  return v;
}

double f_value(const ModifiedTree& tree) {
  if (!tree.valid) return 0.0;
  double f = 1.0;
  for (int l : tree.leaf_mult) f *= gaussian_moment(2 * l);
  return f;
}

}  // namespace gspec
