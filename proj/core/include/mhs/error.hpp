#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mhs {

enum class ErrorCode {
  ParseError,
  ValidationError,
  IndexError,
  InsufficientData,
  UnknownId,
  DimensionMismatch,
  BadMagic,
  CorruptRecord,
  VersionMismatch,
  ShapeError,
  ZeroVector,
  MissingTrace,
  CatalogMismatch,
  LengthMismatch,
  SingleClass,
  EmptyClass,
  NoTruePositives,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// All domain failures raised by the library. The code identifies the failure
/// class; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mhs
