#include "canonsys/errors.hpp"

namespace canonsys {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidVariant: return "invalid-variant";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::InsufficientMoments: return "insufficient-moments";
    case ErrorKind::IllPosed: return "ill-posed";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NonPositiveMeasure: return "non-positive-measure";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Range: return "range";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::NotDetNormalizable: return "not-det-normalizable";
    case ErrorKind::OutOfScope: return "out-of-scope";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidVariant:
    case ErrorKind::Unsupported:
    case ErrorKind::InsufficientMoments:
    case ErrorKind::NonPositiveMeasure:
    case ErrorKind::Range:
    case ErrorKind::NotDetNormalizable:
    case ErrorKind::OutOfScope:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace canonsys
