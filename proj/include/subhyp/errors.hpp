#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subhyp {

enum class ErrorCode {
  InvalidDomain,
  PointOutsideDomain,
  ResolutionTooCoarse,
  CurveTouchesBoundary,
  Disconnected,
  SlackUnreachable,
  PreconditionNotMet,
  HypothesisFails,
  BadExponent,
  DegenerateTrace,
  NotStronglySubhyperbolic,
  ClearanceZero,
  EmptyIntersection,
  MissingDerivatives,
  NotRegular,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library. `name()` is the stable identifier
/// written into reports; `value()` carries an optional numeric witness
/// (for example the minimal constant that would have made a hypothesis hold).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::optional<double> value_;
};

}  // namespace subhyp
