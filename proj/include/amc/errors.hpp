#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amc {

/// Malformed matrix or circuit text. `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Valid input the tooling deliberately does not handle (multi-output
/// optimization, arity mismatch between compared circuits).
class UnsupportedInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* tool_version = AMC_VERSION;

} // namespace amc
