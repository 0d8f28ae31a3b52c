#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kdlog {

enum class ErrorCode {
  NotPrime,
  ReducibleModulus,
  DegreeMismatch,
  ZeroInverse,
  FieldMismatch,
  ZeroToZero,
  TooLarge,
  DivisionByZeroPoly,
  NotDividing,
  ReducibleBinomial,
  ZeroOffset,
  ZeroConstant,
  ContextMismatch,
  IndexOutOfRange,
  DigitOutOfRange,
  WrongDegree,
  NotIrreducible,
  EmptySet,
  AgreementTooSmall,
  NoSolution,
  Degenerate,
  ZeroTarget,
  NotSplit,
  RootNotInTable,
  VerificationFailed,
  NoCandidate,
  Unsolvable,
  NotInSubgroup,
  BudgetExceeded,
  BadFactorization,
  NotFound,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroToZero: return "ZeroToZero";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorCode::NotDividing: return "NotDividing";
    case ErrorCode::ReducibleBinomial: return "ReducibleBinomial";
    case ErrorCode::ZeroOffset: return "ZeroOffset";
    case ErrorCode::ZeroConstant: return "ZeroConstant";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::WrongDegree: return "WrongDegree";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::AgreementTooSmall: return "AgreementTooSmall";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ZeroTarget: return "ZeroTarget";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::RootNotInTable: return "RootNotInTable";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NoCandidate: return "NoCandidate";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::NotInSubgroup: return "NotInSubgroup";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BadFactorization: return "BadFactorization";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps them onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kdlog
