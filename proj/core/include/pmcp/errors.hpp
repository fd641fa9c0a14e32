#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmcp {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Syntax error in a formula or rational literal, with a 0-based offset
/// into the offending text.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

/// The search refutes the property on every extension; quantitative
/// progress is not defined in this case and callers are expected to
/// surface the verdict instead of a number.
struct ViolationFound : Error {
  using Error::Error;
};

}  // namespace pmcp
