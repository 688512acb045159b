#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gspec {

enum class ErrorKind { kDomain, kValidation, kCapacity, kConvergence, kUnsupported };

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::kDomain, what) {}
};

// Malformed input: asymmetric matrices, bad configs, mismatched sizes.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::kValidation, what) {}
};

// Request exceeds a documented enumeration bound.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorKind::kCapacity, what) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(ErrorKind::kConvergence, what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorKind::kUnsupported, what) {}
};

}  // namespace gspec
