#pragma once

#include <stdexcept>
#include <string>

namespace binfty {

enum class ErrorKind {
  DivisionByZero,
  InvalidPermutation,
  NotAMorphismDatum,
  TruncationUnsound,
  NotMaurerCartan,
  NotRepresentable,
  ActionAxiomViolation,
  ActionsDoNotCommute,
  NotHomogeneous,
  NotAInftyStructure,
  NotAMorphismSolution,
  NotInSubalgebraH,
  InjectivityRequired,
  ParseError,
  InvalidInput,
};

inline const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::NotAMorphismDatum: return "NotAMorphismDatum";
    case ErrorKind::TruncationUnsound: return "TruncationUnsound";
    case ErrorKind::NotMaurerCartan: return "NotMaurerCartan";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::ActionAxiomViolation: return "ActionAxiomViolation";
    case ErrorKind::ActionsDoNotCommute: return "ActionsDoNotCommute";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::NotAInftyStructure: return "NotAInftyStructure";
    case ErrorKind::NotAMorphismSolution: return "NotAMorphismSolution";
    case ErrorKind::NotInSubalgebraH: return "NotInSubalgebraH";
    case ErrorKind::InjectivityRequired: return "InjectivityRequired";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind), message_(what) {}
  ErrorKind kind() const { return kind_; }
  // what() without the kind prefix
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace binfty
