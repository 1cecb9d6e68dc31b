#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace senescent {

enum class ErrorKind {
  RankMismatch,
  DomainNotClosed,
  EmptyTree,
  ArityMismatch,
  PositionNotInDomain,
  AlphabetMismatch,
  UnknownSymbol,
  InvalidSystem,
  FossilisedNode,
  RuleNotApplicable,
  ScopeViolation,
  TopMismatch,
  WrongPhase,
  StuckOnDecrement,
  WrongControl,
  Incompatible,
  ResolutionBlocked,
  NormalizationFailure,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` is the
/// machine-readable part, `what()` carries a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Text-format diagnostic with a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace senescent
