#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rgbr {

enum class ErrorKind {
  ConstraintViolation,
  OutOfRange,
  NotCompletelyMixed,
  RepeatStrategyForbidden,
  SingularChain,
  NearSingular,
  NotCommunicating,
  NoConvergence,
  MemoryMismatch,
  StateSpaceTooLarge,
  InvalidModel,
  InfeasibleHypothesis,
  SegmentHitsRepeat,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotCompletelyMixed: return "NotCompletelyMixed";
    case ErrorKind::RepeatStrategyForbidden: return "RepeatStrategyForbidden";
    case ErrorKind::SingularChain: return "SingularChain";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::NotCommunicating: return "NotCommunicating";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::MemoryMismatch: return "MemoryMismatch";
    case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InfeasibleHypothesis: return "InfeasibleHypothesis";
    case ErrorKind::SegmentHitsRepeat: return "SegmentHitsRepeat";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` identifies the failed
/// contract; `what()` carries a human-readable detail line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rgbr
