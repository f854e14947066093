#pragma once

#include <stdexcept>
#include <string>

namespace crystalmask {

// Failure categories surfaced by the library. Every thrown Error carries
// one of these so callers (and the CLI) can branch on the cause.
enum class ErrorCode {
  ParseError,
  SchemaError,
  SumMismatch,
  DimensionMismatch,
  EmptyMask,
  BothEmpty,
  MissingConfidence,
  EdgeMismatch,
  BadEdges,
  CountMismatch,
  EmptyGroundTruth,
  DegeneratePolygon,
  EvenWindow,
  Infeasible,
  MissingPair,
  InvalidArgument,
  IoError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::BothEmpty: return "BothEmpty";
    case ErrorCode::MissingConfidence: return "MissingConfidence";
    case ErrorCode::EdgeMismatch: return "EdgeMismatch";
    case ErrorCode::BadEdges: return "BadEdges";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::EmptyGroundTruth: return "EmptyGroundTruth";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::EvenWindow: return "EvenWindow";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::MissingPair: return "MissingPair";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace crystalmask
