#include "latbound/error.hpp"

namespace latbound {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invariant: return "invariant";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::unsupported_dimension: return "unsupported-dimension";
    case ErrorKind::domain: return "domain";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::degenerate_extremum: return "degenerate-extremum";
    case ErrorKind::extraction: return "extraction";
    case ErrorKind::realness: return "realness";
    case ErrorKind::identity: return "identity";
    case ErrorKind::solver: return "solver";
    case ErrorKind::oracle: return "oracle";
    case ErrorKind::geometry: return "geometry";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

bool Error::numerical() const noexcept {
  switch (kind_) {
    case ErrorKind::accuracy:
    case ErrorKind::extraction:
    case ErrorKind::realness:
    case ErrorKind::identity:
    case ErrorKind::solver:
    case ErrorKind::oracle:
    case ErrorKind::degenerate_extremum:
      return true;
    default:
      return false;
  }
}

void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + " error: " + what);
}

}  // namespace latbound
