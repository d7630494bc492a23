#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semirad {

enum class ErrorKind {
  NotHermitian,
  NonFinite,
  NotPSD,
  ZeroA,
  DimensionMismatch,
  NotCompatible,
  SpaceMismatch,
  UnsupportedArity,
  UnknownCase,
  EvaluationFailure,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto a diagnostic without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace semirad
