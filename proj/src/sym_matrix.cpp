#include "gspec/sym_matrix.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "gspec/error.hpp"
#include "gspec/simd/kernels.hpp"

namespace gspec {

namespace {

static_assert(std::endian::native == std::endian::little, "binary export assumes a little-endian host");

}  // namespace

SymMatrix SymMatrix::from_raw(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n) throw ValidationError("matrix data does not have N*N entries");
  SymMatrix m;
  m.n_ = n;
  m.data_ = std::move(values);
  return m;
}

SymMatrix SymMatrix::from_dense(std::size_t n, std::vector<double> values) {
  SymMatrix m = from_raw(n, std::move(values));
  for (double v : m.data_)
    if (!std::isfinite(v)) throw ValidationError("matrix has non-finite entries");
  if (m.asymmetry() != 0.0) throw ValidationError("matrix is not symmetric");
  return m;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius_sq() const { return simd::dot(data_, data_); }

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

SymMatrix scaled_difference(const SymMatrix& a, const SymMatrix& b, double scale) {
  if (a.size() != b.size()) {
    throw ValidationError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  std::vector<double> out(a.size() * a.size());
  simd::sub_scale(a.data(), b.data(), scale, out);
  return SymMatrix::from_raw(a.size(), std::move(out));
}

void write_binary(const SymMatrix& m, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open " + path.string() + " for writing");
  const std::uint64_t n = m.size();
  os.write(reinterpret_cast<const char*>(&n), sizeof n);
  os.write(reinterpret_cast<const char*>(m.data().data()),
           static_cast<std::streamsize>(m.data().size() * sizeof(double)));
}

SymMatrix read_binary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open " + path.string());
  std::uint64_t n = 0;
  is.read(reinterpret_cast<char*>(&n), sizeof n);
  std::vector<double> values(n * n);
  is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!is) throw ValidationError("truncated matrix file " + path.string());
  return SymMatrix::from_dense(n, std::move(values));
}

void write_csv(const SymMatrix& m, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open " + path.string() + " for writing");
  os << std::setprecision(17);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? "," : "") << m(i, j);
    os << '\n';
  }
}

}  // namespace gspec
