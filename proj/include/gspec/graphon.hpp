#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace gspec {

// A profile r: [0,1] -> [0,1], used by separable graphons W(x,y) = r(x) r(y).
class Profile1D {
 public:
  enum class Kind { kSqrt, kIdentity, kAffine, kSampled };

  static Profile1D sqrt();
  static Profile1D identity();
  // r(x) = a + b x; both endpoints must lie in [0,1].
  static Profile1D affine(double a, double b);
  // Values on a uniform mesh of [0,1] (first at 0, last at 1), linearly
  // interpolated. At least two points, all in [0,1].
  static Profile1D sampled(std::vector<double> values);

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const std::vector<double>& samples() const { return samples_; }
  std::string name() const;

  double operator()(double x) const;

  // \int_0^1 r(x)^d dx. Closed form for the named profiles, 1024-point
  // midpoint rule for sampled ones.
  double integral_power(int d) const;

  // \int_lo^hi r(x) dx, exact for every kind.
  double integral(double lo, double hi) const;

  double max_value() const;

 private:
  Profile1D(Kind kind, double a, double b, std::vector<double> samples)
      : kind_(kind), a_(a), b_(b), samples_(std::move(samples)) {}

  Kind kind_;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> samples_;
};

// n x n row-major block values. Signed entries are allowed; graphons wrap a
// validated instance with entries in [0,1].
struct BlockKernel {
  std::size_t n = 0;
  std::vector<double> values;

  BlockKernel() = default;
  BlockKernel(std::size_t blocks, std::vector<double> v);
  static BlockKernel filled(std::size_t blocks, double value);

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * n, n}; }
};

BlockKernel operator-(const BlockKernel& lhs, const BlockKernel& rhs);

// Block index for coordinate x under the half-open convention
// I_j = [(j-1)/n, j/n), with the last interval closed.
std::size_t block_index(double x, std::size_t n);

struct ConstantGraphon {
  double value;
};

struct ProductGraphon {
  Profile1D profile;
};

struct StepGraphon {
  BlockKernel kernel;
};

// Closed-form kernels that are neither constant, separable nor step
// functions. Named ones round-trip through JSON; others are in-process only.
struct KernelGraphon {
  std::string name;
  std::function<double(double, double)> fn;
};

class Graphon {
 public:
  using Variant = std::variant<ConstantGraphon, ProductGraphon, StepGraphon, KernelGraphon>;

  static Graphon constant(double c);
  static Graphon product(Profile1D profile);
  static Graphon step(BlockKernel kernel);
  static Graphon kernel(std::string name, std::function<double(double, double)> fn);
  // Registered closed-form kernels. "mixed": (x(1-y) + y(1-x)) / 2.
  static Graphon named_kernel(const std::string& name);

  const Variant& variant() const { return v_; }
  bool is_constant() const { return std::holds_alternative<ConstantGraphon>(v_); }
  bool is_product() const { return std::holds_alternative<ProductGraphon>(v_); }
  bool is_step() const { return std::holds_alternative<StepGraphon>(v_); }
  bool is_kernel() const { return std::holds_alternative<KernelGraphon>(v_); }

  // Unchecked evaluation; see gspec::eval for the checked entry point.
  double operator()(double x, double y) const;

  // Upper bound of the kernel (exact except for KernelGraphon, which is
  // scanned on a 257 x 257 grid).
  double sup() const;

  std::string describe() const;

 private:
  explicit Graphon(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Checked evaluation: throws DomainError outside [0,1]^2.
double eval(const Graphon& w, double x, double y);

// Step graphon of an n x n symmetric matrix with entries in [0,1].
Graphon empirical_graphon(std::span<const double> matrix, std::size_t n);
Graphon empirical_graphon(const std::vector<std::vector<double>>& matrix);

// Block values of constant and step graphons; nullopt otherwise.
std::optional<BlockKernel> as_block_kernel(const Graphon& w);

// Step approximation sampled at block midpoints.
BlockKernel discretize(const Graphon& w, std::size_t n);

// \int\int |W1 - W2|. Exact for constant/step pairs (common refinement of
// the two block partitions), 256 x 256 midpoint rule otherwise.
double l1_distance(const Graphon& w1, const Graphon& w2);

// Limit variance kernel f - eps f^2 of the scaled inhomogeneous Erdos-Renyi
// model.
Graphon bernoulli_variance_kernel(const Graphon& f, double eps);

}  // namespace gspec
