#include "maxent/error.hpp"

namespace maxent {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::arithmetic: return "arithmetic";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::size_guard: return "size-guard";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::boundary: return "boundary";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::parse: return "parse";
    case ErrorKind::integrality: return "integrality";
    case ErrorKind::convention: return "convention";
  }
  return "unknown";
}

}  // namespace maxent

