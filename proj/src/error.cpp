#include "semirad/error.hpp"

namespace semirad {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::ZeroA: return "ZeroA";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::UnsupportedArity: return "UnsupportedArity";
    case ErrorKind::UnknownCase: return "UnknownCase";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace semirad
