#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace numeralkit {

enum class ErrorKind {
  UnsupportedValue,
  MalformedNumeral,
  MixedScript,
  NoDigits,
  MalformedForFormat,
  InvalidDecimal,
  DivisionByZero,
  ConfigError,
  MissingCatalogEntry,
  EmptyCorpus,
  SuiteMismatch,
  SingularDesign,
  SeparationDetected,
  DegenerateResponse,
  JoinFailure,
  NoTableEntry,
  UnknownName,
  BadRecord,
  Io,
  Network,
};

constexpr std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedValue: return "UnsupportedValue";
    case ErrorKind::MalformedNumeral: return "MalformedNumeral";
    case ErrorKind::MixedScript: return "MixedScript";
    case ErrorKind::NoDigits: return "NoDigits";
    case ErrorKind::MalformedForFormat: return "MalformedForFormat";
    case ErrorKind::InvalidDecimal: return "InvalidDecimal";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::MissingCatalogEntry: return "MissingCatalogEntry";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::SuiteMismatch: return "SuiteMismatch";
    case ErrorKind::SingularDesign: return "SingularDesign";
    case ErrorKind::SeparationDetected: return "SeparationDetected";
    case ErrorKind::DegenerateResponse: return "DegenerateResponse";
    case ErrorKind::JoinFailure: return "JoinFailure";
    case ErrorKind::NoTableEntry: return "NoTableEntry";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::BadRecord: return "BadRecord";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Network: return "Network";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is what callers branch on;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace numeralkit
