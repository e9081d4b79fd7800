#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptv {

enum class ErrorCode {
  EmptyWord,
  InvalidWord,
  UnknownTimer,
  UnknownSymbol,
  InvalidStructure,
  UnchainedPath,
  NotWellFormed,
  NoAcceptingPath,
  NoSuchPath,
  UnreachablePathStart,
  UnsupportedLasso,
  UnboundedChild,
  DegenerateChild,
  NoParentCycle,
  SyntaxError,
  SemanticError,
  OutOfOrderEvent,
  IncompleteProfile,
  DirtyTrace,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `code()` identifies the error kind; the
/// message carries the offending entity.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a source position (1-based).
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& expected, const std::string& found)
      : Error(ErrorCode::SyntaxError, std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                                          expected + ", found " + found),
        line_(line),
        column_(column),
        expected_(expected) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

class SemanticError : public Error {
 public:
  SemanticError(const std::string& entity, const std::string& reason)
      : Error(ErrorCode::SemanticError, entity + ": " + reason), entity_(entity), reason_(reason) {}

  const std::string& entity() const noexcept { return entity_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string entity_;
  std::string reason_;
};

}  // namespace ptv
