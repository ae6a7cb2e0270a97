#pragma once

#include <stdexcept>
#include <string>

namespace unbreak {

// Base for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input (files, flag values). CLI maps this to exit code 2.
struct ParseError : Error {
  int line = 0;
  ParseError(const std::string& msg, int line_no = 0)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

// A hard cap was exceeded before enumeration started. CLI exit code 3.
struct BudgetError : Error {
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// Internal consistency failure (verification of our own output failed).
// Never silent: indicates an implementation bug.
struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error("internal: " + msg) {}
};

}  // namespace unbreak
