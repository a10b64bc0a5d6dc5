#pragma once

#include <stdexcept>
#include <string>

namespace solvdeg {

enum class Errc {
  OutOfRange,
  InvalidParams,
  DivisionByZero,
  FieldMismatch,
  ClosureLimitExceeded,
  NotEnumerated,
  NotNormal,
  ClassCapExceeded,
  SplitFailure,
  ModulusMismatch,
  CenterMismatch,
  UnsupportedKind,
  TargetMismatch,
  KindMismatch,
  NotInvariant,
  SearchFailed,
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ClosureLimitExceeded: return "ClosureLimitExceeded";
    case Errc::NotEnumerated: return "NotEnumerated";
    case Errc::NotNormal: return "NotNormal";
    case Errc::ClassCapExceeded: return "ClassCapExceeded";
    case Errc::SplitFailure: return "SplitFailure";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::CenterMismatch: return "CenterMismatch";
    case Errc::UnsupportedKind: return "UnsupportedKind";
    case Errc::TargetMismatch: return "TargetMismatch";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::SearchFailed: return "SearchFailed";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace solvdeg
