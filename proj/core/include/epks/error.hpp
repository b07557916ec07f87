#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epks {

/// Failure categories raised by the solvers and closed-form evaluators.
enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  MeanDefect,
  RangeViolation,
  NotTorus,
  NotLine,
  NonzeroTotalMass,
  CflViolation,
  RangeBreach,
  VacuumApproach,
  NoVacuum,
  MultipleVacuumIntervals,
  UnsupportedOrder,
  PreconditionViolation,
  InversionFailure,
  ResonantDenominator,
  ZeroWavenumber,
  InsufficientSamples,
  NonPositiveSample,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace epks
