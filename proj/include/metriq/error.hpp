#pragma once

#include <stdexcept>
#include <string>

namespace metriq {

enum class Errc {
  // input / parse
  ParseError,
  // validation
  InvalidDistanceMatrix,
  AsymmetricMatrix,
  NegativeOrZeroOffDiagonal,
  TriangleViolation,
  DisconnectedGraph,
  SelfLoop,
  DuplicateEdge,
  NonPositiveFactor,
  BasisMismatch,
  DomainError,
  OracleLimitExceeded,
  SingularSimilarityMatrix,
  MalformedTau,
  IndexOutOfRange,
  InvalidGluing,
  DuplicatePosition,
  InvalidConfig,
  // hypothesis violations (input outside a theorem's assumptions)
  NotWeak3Generic,
  InconsistentData,
  NotAMetric,
  NoRealization,
  UnrecognizedPattern,
  // internal
  TheoremViolation,
  PrecisionExhausted,
  InternalError,
};

/// Coarse class used by the CLI exit-code contract:
/// 0 ok, 2 parse, 3 validation, 4 hypothesis violation, 5 internal.
enum class ErrorClass { Parse = 2, Validation = 3, Hypothesis = 4, Internal = 5 };

inline ErrorClass error_class(Errc c) {
  switch (c) {
    case Errc::ParseError:
      return ErrorClass::Parse;
    case Errc::NotWeak3Generic:
    case Errc::InconsistentData:
    case Errc::NotAMetric:
    case Errc::NoRealization:
    case Errc::UnrecognizedPattern:
      return ErrorClass::Hypothesis;
    case Errc::TheoremViolation:
    case Errc::PrecisionExhausted:
    case Errc::InternalError:
      return ErrorClass::Internal;
    default:
      return ErrorClass::Validation;
  }
}

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidDistanceMatrix: return "InvalidDistanceMatrix";
    case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
    case Errc::NegativeOrZeroOffDiagonal: return "NegativeOrZeroOffDiagonal";
    case Errc::TriangleViolation: return "TriangleViolation";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::NonPositiveFactor: return "NonPositiveFactor";
    case Errc::BasisMismatch: return "BasisMismatch";
    case Errc::DomainError: return "DomainError";
    case Errc::OracleLimitExceeded: return "OracleLimitExceeded";
    case Errc::SingularSimilarityMatrix: return "SingularSimilarityMatrix";
    case Errc::MalformedTau: return "MalformedTau";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidGluing: return "InvalidGluing";
    case Errc::DuplicatePosition: return "DuplicatePosition";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::NotWeak3Generic: return "NotWeak3Generic";
    case Errc::InconsistentData: return "InconsistentData";
    case Errc::NotAMetric: return "NotAMetric";
    case Errc::NoRealization: return "NoRealization";
    case Errc::UnrecognizedPattern: return "UnrecognizedPattern";
    case Errc::TheoremViolation: return "TheoremViolation";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::InternalError: return "InternalError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }
  ErrorClass klass() const { return error_class(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace metriq
