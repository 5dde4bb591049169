#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stpaprio {

enum class ErrorCode {
  MalformedId,
  UnknownPhase,
  NegativeEJ,
  NonPositiveSIF,
  EmptyInput,
  TooFewRequirements,
  InvalidPerturbation,
  InvalidConfig,
  MismatchedSets,
  NonPositiveMax,
  OutOfRange,
  EmptyDescription,
  MissingPriority,
  ParseError,
  UnresolvedUCA,
  InvalidIntensityToken,
  DuplicateId,
  IoError,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by bad input or configuration (CLI exit code 1).
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // Text without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace stpaprio
