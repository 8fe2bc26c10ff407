#pragma once

#include <stdexcept>
#include <string>

namespace padicprec {

enum class ErrorKind {
  InvalidInput,
  ParseError,
  NonMonicModulus,
  DegreeExceedsBound,
  NonUnitConstantTerm,
  PrecisionLossInGcd,
  DivisionByIndistinguishableZero,
  NegativeValuation,
  InsufficientPrecision,
  SingularToPrecision,
  DiscriminantZero,
  RandomizationExhausted,
  NotCyclic,
  NotSimpleRoot,
  NotSimpleEigenvalue,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonMonicModulus: return "NonMonicModulus";
    case ErrorKind::DegreeExceedsBound: return "DegreeExceedsBound";
    case ErrorKind::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorKind::PrecisionLossInGcd: return "PrecisionLossInGcd";
    case ErrorKind::DivisionByIndistinguishableZero: return "DivisionByIndistinguishableZero";
    case ErrorKind::NegativeValuation: return "NegativeValuation";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::SingularToPrecision: return "SingularToPrecision";
    case ErrorKind::DiscriminantZero: return "DiscriminantZero";
    case ErrorKind::RandomizationExhausted: return "RandomizationExhausted";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::NotSimpleRoot: return "NotSimpleRoot";
    case ErrorKind::NotSimpleEigenvalue: return "NotSimpleEigenvalue";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by the input itself rather than by lost digits.
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::InvalidInput || kind_ == ErrorKind::ParseError ||
           kind_ == ErrorKind::NegativeValuation;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace padicprec
