#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropicell {

enum class Errc {
  // input problems
  DimensionMismatch,
  EmptyConfiguration,
  EntryOutOfRange,
  InvalidInput,
  ParseError,
  RepeatedColumn,
  GammaInCell,
  NotACandidate,
  SingularCell,
  ZeroDegreeConfiguration,
  BudgetExceeded,
  DimensionTooLarge,
  UnknownFamily,
  SizeOutOfRange,
  PreconditionViolated,
  // internal invariant failures
  InternalRankError,
  GenericityFailure,
  InconsistentCone,
  CircuitSignError,
  IndexMapError,
  InvariantViolation,
  ArithmeticOverflow,
};

constexpr auto errc_name(Errc e) -> std::string_view {
  switch (e) {
  case Errc::DimensionMismatch: return "DimensionMismatch";
  case Errc::EmptyConfiguration: return "EmptyConfiguration";
  case Errc::EntryOutOfRange: return "EntryOutOfRange";
  case Errc::InvalidInput: return "InvalidInput";
  case Errc::ParseError: return "ParseError";
  case Errc::RepeatedColumn: return "RepeatedColumn";
  case Errc::GammaInCell: return "GammaInCell";
  case Errc::NotACandidate: return "NotACandidate";
  case Errc::SingularCell: return "SingularCell";
  case Errc::ZeroDegreeConfiguration: return "ZeroDegreeConfiguration";
  case Errc::BudgetExceeded: return "BudgetExceeded";
  case Errc::DimensionTooLarge: return "DimensionTooLarge";
  case Errc::UnknownFamily: return "UnknownFamily";
  case Errc::SizeOutOfRange: return "SizeOutOfRange";
  case Errc::PreconditionViolated: return "PreconditionViolated";
  case Errc::InternalRankError: return "InternalRankError";
  case Errc::GenericityFailure: return "GenericityFailure";
  case Errc::InconsistentCone: return "InconsistentCone";
  case Errc::CircuitSignError: return "CircuitSignError";
  case Errc::IndexMapError: return "IndexMapError";
  case Errc::InvariantViolation: return "InvariantViolation";
  case Errc::ArithmeticOverflow: return "ArithmeticOverflow";
  }
  return "Unknown";
}

/// Internal errors signal a broken engine invariant rather than bad input.
constexpr auto is_internal(Errc e) -> bool {
  switch (e) {
  case Errc::InternalRankError:
  case Errc::GenericityFailure:
  case Errc::InconsistentCone:
  case Errc::CircuitSignError:
  case Errc::IndexMapError:
  case Errc::InvariantViolation:
  case Errc::ArithmeticOverflow: return true;
  default: return false;
  }
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code) {}

  [[nodiscard]] auto code() const noexcept -> Errc { return code_; }
  [[nodiscard]] auto internal() const noexcept -> bool {
    return is_internal(code_);
  }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string &what) {
  throw Error(code, what);
}

} // namespace tropicell
