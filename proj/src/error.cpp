#include "stpaprio/error.hpp"

namespace stpaprio {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedId: return "MalformedId";
    case ErrorCode::UnknownPhase: return "UnknownPhase";
    case ErrorCode::NegativeEJ: return "NegativeEJ";
    case ErrorCode::NonPositiveSIF: return "NonPositiveSIF";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooFewRequirements: return "TooFewRequirements";
    case ErrorCode::InvalidPerturbation: return "InvalidPerturbation";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MismatchedSets: return "MismatchedSets";
    case ErrorCode::NonPositiveMax: return "NonPositiveMax";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyDescription: return "EmptyDescription";
    case ErrorCode::MissingPriority: return "MissingPriority";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedUCA: return "UnresolvedUCA";
    case ErrorCode::InvalidIntensityToken: return "InvalidIntensityToken";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedId:
    case ErrorCode::UnknownPhase:
    case ErrorCode::NegativeEJ:
    case ErrorCode::NonPositiveSIF:
    case ErrorCode::TooFewRequirements:
    case ErrorCode::InvalidPerturbation:
    case ErrorCode::InvalidConfig:
    case ErrorCode::EmptyDescription:
    case ErrorCode::ParseError:
    case ErrorCode::UnresolvedUCA:
    case ErrorCode::InvalidIntensityToken:
    case ErrorCode::DuplicateId:
      return true;
    default:
      return false;
  }
}

}  // namespace stpaprio
