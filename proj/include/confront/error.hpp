#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace confront {

enum class ErrorCode {
  MalformedRecord,
  DanglingEndpoint,
  UnknownRawType,
  DuplicateId,
  UnmappableType,
  ConflictingMerge,
  MissingLength,
  MissingSegments,
  EmptyResult,
  NoFinitePairs,
  InsufficientCoordinates,
  UncoveredVertex,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Data-level failure raised by every module of the library. The CLI maps
/// these to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace confront
