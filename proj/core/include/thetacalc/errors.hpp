/**
 * @file errors.hpp
 * @brief Structured error type shared by every module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace thetacalc {

enum class ErrorCode {
  UnknownCharacter,
  UnknownCharacterValue,
  InvalidRegistry,
  MissingRootData,
  MissingPairRootData,
  ParityError,
  SignMismatch,
  IncompleteDualityData,
  OracleInapplicable,
  NotOnDownTower,
  NotOnUpTower,
  ParityMismatch,
  ConfigMismatch,
  CaseMismatch,
  InvalidParameter,
  InconsistentRecipe,
  ParseError,
};

/// Stable identifier for an error code, e.g. "MissingRootData".
const char* to_string(ErrorCode code);

/// Base exception; what() is "<Code>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

/// Input-text error carrying a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace thetacalc
