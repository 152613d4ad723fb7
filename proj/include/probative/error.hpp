#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace probative {

enum class ErrorCode {
  InvalidArgument,
  InvalidModel,
  Cycle,
  UnknownNode,
  UnknownState,
  MissingParent,
  IncompleteAssignment,
  ImpossibleEvidence,
  Structure,
  ZeroOverZero,
  PriorOverrideOnChild,
  UnknownFixture,
  Parse,
  Schema,
};

/// Stable upper-case name used in reports and machine output, e.g. "IMPOSSIBLE_EVIDENCE".
std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is what
/// callers should branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace probative
