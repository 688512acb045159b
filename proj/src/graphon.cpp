#include "gspec/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gspec/error.hpp"
#include "overloaded.hpp"

namespace gspec {

using detail::Overloaded;

namespace {

constexpr int kProfileQuadraturePoints = 1024;
constexpr std::size_t kL1QuadraturePoints = 256;
constexpr double kSymmetryTolerance = 1e-12;

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0,1], got " << v;
    throw ValidationError(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------- Profile1D

Profile1D Profile1D::sqrt() { return Profile1D(Kind::kSqrt, 0.0, 0.0, {}); }

Profile1D Profile1D::identity() { return Profile1D(Kind::kIdentity, 0.0, 1.0, {}); }

Profile1D Profile1D::affine(double a, double b) {
  check_unit(a, "affine profile r(0)");
  check_unit(a + b, "affine profile r(1)");
  return Profile1D(Kind::kAffine, a, b, {});
}

Profile1D Profile1D::sampled(std::vector<double> values) {
  if (values.size() < 2) throw ValidationError("sampled profile needs at least 2 mesh points");
  for (double v : values) check_unit(v, "sampled profile value");
  return Profile1D(Kind::kSampled, 0.0, 0.0, std::move(values));
}

std::string Profile1D::name() const {
  switch (kind_) {
    case Kind::kSqrt: return "sqrt";
    case Kind::kIdentity: return "identity";
    case Kind::kAffine: {
      std::ostringstream os;
      os << "affine(" << a_ << "," << b_ << ")";
      return os.str();
    }
    case Kind::kSampled: return "sampled(" + std::to_string(samples_.size()) + ")";
  }
  return "unknown";
}

double Profile1D::operator()(double x) const {
  switch (kind_) {
    case Kind::kSqrt: return std::sqrt(x);
    case Kind::kIdentity: return x;
    case Kind::kAffine: return a_ + b_ * x;
    case Kind::kSampled: {
      const double pos = x * static_cast<double>(samples_.size() - 1);
      const auto cell = std::min<std::size_t>(static_cast<std::size_t>(pos), samples_.size() - 2);
      const double frac = pos - static_cast<double>(cell);
      return samples_[cell] + frac * (samples_[cell + 1] - samples_[cell]);
    }
  }
  return 0.0;
}

double Profile1D::integral_power(int d) const {
  if (d == 0) return 1.0;
  const double dd = d;
  switch (kind_) {
    case Kind::kSqrt: return 2.0 / (dd + 2.0);
    case Kind::kIdentity: return 1.0 / (dd + 1.0);
    case Kind::kAffine:
      if (b_ == 0.0) return std::pow(a_, dd);
      return (std::pow(a_ + b_, dd + 1.0) - std::pow(a_, dd + 1.0)) / ((dd + 1.0) * b_);
    case Kind::kSampled: {
      double s = 0.0;
      for (int i = 0; i < kProfileQuadraturePoints; ++i) {
        s += std::pow((*this)((i + 0.5) / kProfileQuadraturePoints), dd);
      }
      return s / kProfileQuadraturePoints;
    }
  }
  return 0.0;
}

double Profile1D::integral(double lo, double hi) const {
  switch (kind_) {
    case Kind::kSqrt: return 2.0 / 3.0 * (std::pow(hi, 1.5) - std::pow(lo, 1.5));
    case Kind::kIdentity: return 0.5 * (hi * hi - lo * lo);
    case Kind::kAffine: return a_ * (hi - lo) + 0.5 * b_ * (hi * hi - lo * lo);
    case Kind::kSampled: {
      // Exact for the piecewise-linear interpolant.
      const double h = 1.0 / static_cast<double>(samples_.size() - 1);
      double s = 0.0;
      for (std::size_t c = 0; c + 1 < samples_.size(); ++c) {
        const double a = std::max(lo, c * h);
        const double b = std::min(hi, (c + 1) * h);
        if (b <= a) continue;
        s += 0.5 * ((*this)(a) + (*this)(b)) * (b - a);
      }
      return s;
    }
  }
  return 0.0;
}

double Profile1D::max_value() const {
  switch (kind_) {
    case Kind::kSqrt:
    case Kind::kIdentity: return 1.0;
    case Kind::kAffine: return std::max(a_, a_ + b_);
    case Kind::kSampled: return *std::max_element(samples_.begin(), samples_.end());
  }
  return 1.0;
}

// -------------------------------------------------------------- BlockKernel

BlockKernel::BlockKernel(std::size_t blocks, std::vector<double> v)
    : n(blocks), values(std::move(v)) {
  if (n == 0) throw ValidationError("block kernel needs at least one block");
  if (values.size() != n * n) throw ValidationError("block kernel values must be n*n");
}

BlockKernel BlockKernel::filled(std::size_t blocks, double value) {
  return BlockKernel(blocks, std::vector<double>(blocks * blocks, value));
}

BlockKernel operator-(const BlockKernel& lhs, const BlockKernel& rhs) {
  if (lhs.n != rhs.n) throw ValidationError("block kernels have different block counts");
  BlockKernel out = lhs;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= rhs.values[i];
  return out;
}

std::size_t block_index(double x, std::size_t n) {
  const auto idx = static_cast<std::size_t>(std::floor(x * static_cast<double>(n)));
  return std::min(idx, n - 1);
}

// ------------------------------------------------------------------ Graphon

Graphon Graphon::constant(double c) {
  check_unit(c, "constant graphon value");
  return Graphon(ConstantGraphon{c});
}

Graphon Graphon::product(Profile1D profile) { return Graphon(ProductGraphon{std::move(profile)}); }

Graphon Graphon::step(BlockKernel kernel) {
  const std::size_t n = kernel.n;
  if (n == 0) throw ValidationError("step graphon needs at least one block");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      check_unit(kernel(i, j), "step graphon value");
      if (std::abs(kernel(i, j) - kernel(j, i)) > kSymmetryTolerance) {
        throw ValidationError("step graphon values must be symmetric");
      }
    }
  }
  return Graphon(StepGraphon{std::move(kernel)});
}

Graphon Graphon::kernel(std::string name, std::function<double(double, double)> fn) {
  return Graphon(KernelGraphon{std::move(name), std::move(fn)});
}

Graphon Graphon::named_kernel(const std::string& name) {
  if (name == "mixed") {
    return kernel("mixed", [](double x, double y) { return 0.5 * (x * (1.0 - y) + y * (1.0 - x)); });
  }
  throw ValidationError("unknown kernel graphon '" + name + "'");
}

double Graphon::operator()(double x, double y) const {
  return std::visit(Overloaded{
                        [](const ConstantGraphon& g) { return g.value; },
                        [&](const ProductGraphon& g) { return g.profile(x) * g.profile(y); },
                        [&](const StepGraphon& g) {
                          return g.kernel(block_index(x, g.kernel.n), block_index(y, g.kernel.n));
                        },
                        [&](const KernelGraphon& g) { return g.fn(x, y); },
                    },
                    v_);
}

double Graphon::sup() const {
  return std::visit(Overloaded{
                        [](const ConstantGraphon& g) { return g.value; },
                        [](const ProductGraphon& g) {
                          const double m = g.profile.max_value();
                          return m * m;
                        },
                        [](const StepGraphon& g) {
                          return *std::max_element(g.kernel.values.begin(), g.kernel.values.end());
                        },
                        [](const KernelGraphon& g) {
                          double m = 0.0;
                          for (int i = 0; i <= 256; ++i)
                            for (int j = 0; j <= 256; ++j) m = std::max(m, g.fn(i / 256.0, j / 256.0));
                          return m;
                        },
                    },
                    v_);
}

std::string Graphon::describe() const {
  return std::visit(Overloaded{
                        [](const ConstantGraphon& g) {
                          std::ostringstream os;
                          os << "constant(" << g.value << ")";
                          return os.str();
                        },
                        [](const ProductGraphon& g) { return "product(" + g.profile.name() + ")"; },
                        [](const StepGraphon& g) { return "step(n=" + std::to_string(g.kernel.n) + ")"; },
                        [](const KernelGraphon& g) { return "kernel(" + g.name + ")"; },
                    },
                    v_);
}

double eval(const Graphon& w, double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    std::ostringstream os;
    os << "graphon evaluated outside [0,1]^2 at (" << x << ", " << y << ")";
    throw DomainError(os.str());
  }
  return w(x, y);
}

Graphon empirical_graphon(std::span<const double> matrix, std::size_t n) {
  if (n == 0 || matrix.size() != n * n) {
    throw ValidationError("empirical graphon needs a non-empty square matrix");
  }
  return Graphon::step(BlockKernel(n, std::vector<double>(matrix.begin(), matrix.end())));
}

Graphon empirical_graphon(const std::vector<std::vector<double>>& matrix) {
  const std::size_t n = matrix.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : matrix) {
    if (row.size() != n) throw ValidationError("empirical graphon needs a square matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return empirical_graphon(flat, n);
}

std::optional<BlockKernel> as_block_kernel(const Graphon& w) {
  if (const auto* c = std::get_if<ConstantGraphon>(&w.variant())) return BlockKernel::filled(1, c->value);
  if (const auto* s = std::get_if<StepGraphon>(&w.variant())) return s->kernel;
  return std::nullopt;
}

BlockKernel discretize(const Graphon& w, std::size_t n) {
  if (auto k = as_block_kernel(w); k && k->n == n) return *k;
  BlockKernel out = BlockKernel::filled(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (i + 0.5) / static_cast<double>(n);
    for (std::size_t j = i; j < n; ++j) {
      const double v = w(x, (j + 0.5) / static_cast<double>(n));
      out.at(i, j) = v;
      out.at(j, i) = v;
    }
  }
  return out;
}

double l1_distance(const Graphon& w1, const Graphon& w2) {
  const auto k1 = as_block_kernel(w1);
  const auto k2 = as_block_kernel(w2);
  if (k1 && k2) {
    std::vector<double> cuts;
    for (std::size_t i = 0; i <= k1->n; ++i) cuts.push_back(static_cast<double>(i) / k1->n);
    for (std::size_t i = 0; i <= k2->n; ++i) cuts.push_back(static_cast<double>(i) / k2->n);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    // Each refined cell lies inside exactly one block of either partition.
    const std::size_t cells = cuts.size() - 1;
    std::vector<std::size_t> b1(cells), b2(cells);
    std::vector<double> len(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
      b1[c] = block_index(mid, k1->n);
      b2[c] = block_index(mid, k2->n);
      len[c] = cuts[c + 1] - cuts[c];
    }
    double s = 0.0;
    for (std::size_t a = 0; a < cells; ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b < cells; ++b) {
        row += std::abs((*k1)(b1[a], b1[b]) - (*k2)(b2[a], b2[b])) * len[b];
      }
      s += row * len[a];
    }
    return s;
  }
  const std::size_t m = kL1QuadraturePoints;
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = (i + 0.5) / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double y = (j + 0.5) / static_cast<double>(m);
      s += std::abs(w1(x, y) - w2(x, y));
    }
  }
  return s / static_cast<double>(m * m);
}

Graphon bernoulli_variance_kernel(const Graphon& f, double eps) {
  if (const auto* c = std::get_if<ConstantGraphon>(&f.variant())) {
    return Graphon::constant(c->value - eps * c->value * c->value);
  }
  std::ostringstream name;
  name << "bernoulli_variance(" << f.describe() << "," << eps << ")";
  return Graphon::kernel(name.str(), [f, eps](double x, double y) {
    const double v = f(x, y);
    return v - eps * v * v;
  });
}

}  // namespace gspec
