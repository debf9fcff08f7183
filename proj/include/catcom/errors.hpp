#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catcom {

enum class ErrorKind {
  TypeMismatch,
  NonAssociative,
  MissingIdentity,
  InterchangeFailure,
  SymmetryFailure,
  SnakeFailure,
  NotClosed,
  NotMultiplicative,
  UnitViolation,
  Negative,
  Degenerate,
  InfiniteScalars,
  RankUnstable,
  NotInSpan,
  IllDefined,
  CounterexampleFound,
  NameMismatch,
  NoCanonicalUnit,
  DominationFailure,
  NotStrictlyPositive,
  NotOrthogonal,
  ConeCertificateFailure,
  EnumerationTooLarge,
  Config,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::InterchangeFailure: return "InterchangeFailure";
    case ErrorKind::SymmetryFailure: return "SymmetryFailure";
    case ErrorKind::SnakeFailure: return "SnakeFailure";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotMultiplicative: return "NotMultiplicative";
    case ErrorKind::UnitViolation: return "UnitViolation";
    case ErrorKind::Negative: return "Negative";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::InfiniteScalars: return "InfiniteScalars";
    case ErrorKind::RankUnstable: return "RankUnstable";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::IllDefined: return "IllDefined";
    case ErrorKind::CounterexampleFound: return "CounterexampleFound";
    case ErrorKind::NameMismatch: return "NameMismatch";
    case ErrorKind::NoCanonicalUnit: return "NoCanonicalUnit";
    case ErrorKind::DominationFailure: return "DominationFailure";
    case ErrorKind::NotStrictlyPositive: return "NotStrictlyPositive";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::ConeCertificateFailure: return "ConeCertificateFailure";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind and, where one
/// exists, a human-readable witness (the offending morphisms or objects).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string witness)
      : std::runtime_error(std::string(to_string(kind)) + ": " + witness),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace catcom
