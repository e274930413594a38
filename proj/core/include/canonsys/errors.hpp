#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace canonsys {

enum class ErrorKind {
  InvalidArgument,
  InvalidVariant,
  Unsupported,
  InsufficientMoments,
  IllPosed,
  Degenerate,
  NonPositiveMeasure,
  Accuracy,
  Consistency,
  Range,
  Numerical,
  Pole,
  NotDetNormalizable,
  OutOfScope,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds that indicate bad input rather than a numerical failure.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

}  // namespace canonsys
