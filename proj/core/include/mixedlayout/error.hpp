#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixedlayout {

enum class ErrorCode {
  OutOfRange,
  SelfLoop,
  DuplicateEdge,
  BadEdgeId,
  CoverageMismatch,
  NotSeparated,
  NotMatching,
  SyntaxError,
  SizeLimit,
  InsufficientInput,
  BudgetExceeded,
  BadParams,
  RealizationNotFound,
  InvalidPage,
  InvalidInput,
  DepthExceeded,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int line = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  // 1-based input line for SyntaxError, 0 otherwise.
  int line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  int line_;
};

}  // namespace mixedlayout
