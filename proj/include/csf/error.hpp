#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csf {

enum class ErrorCode {
  InvalidSpec,
  InvalidProfile,
  InvalidSubset,
  DegenerateDenominator,
  UndefinedDeviation,
  LucklessFamily,
  InapplicableAxiom,
  BackendUnavailable,
  DomainError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the axiom sampler in particular) can tell evaluation failures
/// apart from configuration mistakes.
class CsfError : public std::runtime_error {
 public:
  CsfError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::UndefinedDeviation: return "UndefinedDeviation";
    case ErrorCode::LucklessFamily: return "LucklessFamily";
    case ErrorCode::InapplicableAxiom: return "InapplicableAxiom";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::DomainError: return "DomainError";
  }
  return "Unknown";
}

}  // namespace csf
