#include "senescent/errors.hpp"

namespace senescent {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::DomainNotClosed: return "DomainNotClosed";
    case ErrorKind::EmptyTree: return "EmptyTree";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::PositionNotInDomain: return "PositionNotInDomain";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::FossilisedNode: return "FossilisedNode";
    case ErrorKind::RuleNotApplicable: return "RuleNotApplicable";
    case ErrorKind::ScopeViolation: return "ScopeViolation";
    case ErrorKind::TopMismatch: return "TopMismatch";
    case ErrorKind::WrongPhase: return "WrongPhase";
    case ErrorKind::StuckOnDecrement: return "StuckOnDecrement";
    case ErrorKind::WrongControl: return "WrongControl";
    case ErrorKind::Incompatible: return "Incompatible";
    case ErrorKind::ResolutionBlocked: return "ResolutionBlocked";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::Parse,
            std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace senescent
