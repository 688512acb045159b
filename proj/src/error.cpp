#include "gspec/error.hpp"

namespace gspec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kConvergence: return "convergence";
    case ErrorKind::kUnsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace gspec
