#include "thetacalc/errors.hpp"

#include <stdexcept>

#include "thetacalc/sign.hpp"

namespace thetacalc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownCharacter: return "UnknownCharacter";
    case ErrorCode::UnknownCharacterValue: return "UnknownCharacterValue";
    case ErrorCode::InvalidRegistry: return "InvalidRegistry";
    case ErrorCode::MissingRootData: return "MissingRootData";
    case ErrorCode::MissingPairRootData: return "MissingPairRootData";
    case ErrorCode::ParityError: return "ParityError";
    case ErrorCode::SignMismatch: return "SignMismatch";
    case ErrorCode::IncompleteDualityData: return "IncompleteDualityData";
    case ErrorCode::OracleInapplicable: return "OracleInapplicable";
    case ErrorCode::NotOnDownTower: return "NotOnDownTower";
    case ErrorCode::NotOnUpTower: return "NotOnUpTower";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InconsistentRecipe: return "InconsistentRecipe";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message) {}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorCode::ParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Sign Sign::from_int(int v) {
  if (v == 1) return plus();
  if (v == -1) return minus();
  throw std::invalid_argument("sign must be +1 or -1, got " + std::to_string(v));
}

}  // namespace thetacalc
