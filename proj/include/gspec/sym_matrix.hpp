#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace gspec {

// Dense symmetric matrix with row-major storage. Mutators write both (i, j)
// and (j, i), so symmetry holds by construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  // Takes a full row-major n x n array; ValidationError if it is not exactly
  // symmetric or has non-finite entries.
  static SymMatrix from_dense(std::size_t n, std::vector<double> values);
  static SymMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const double> data() const { return data_; }

  double trace() const;
  double frobenius_sq() const;
  double max_abs() const;
  // max |M(i,j) - M(j,i)|; nonzero only for matrices built via from_raw.
  double asymmetry() const;

  // Unvalidated construction, used by the eigen-solver tests to feed
  // deliberately asymmetric input.
  static SymMatrix from_raw(std::size_t n, std::vector<double> values);

  bool operator==(const SymMatrix& other) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// (a - b) * scale elementwise; ValidationError on mismatched dimensions.
SymMatrix scaled_difference(const SymMatrix& a, const SymMatrix& b, double scale);

// Little-endian uint64 dimension followed by N*N float64 values, row-major.
void write_binary(const SymMatrix& m, const std::filesystem::path& path);
SymMatrix read_binary(const std::filesystem::path& path);
void write_csv(const SymMatrix& m, const std::filesystem::path& path);

}  // namespace gspec
