#pragma once

#include <stdexcept>
#include <string>

namespace algchar {

/// Base for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression or scenario text. `pos` is a 0-based byte offset
/// into the parsed string (or line offset for scenario files).
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), pos(pos) {}
  std::size_t pos;
};

/// Mathematically impossible request: division by zero, singular matrix,
/// non-acyclic complex, wrong field.
struct MathError : Error {
  using Error::Error;
};

/// Dimension / shape / context mismatch between operands.
struct ShapeError : Error {
  using Error::Error;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw ShapeError(msg);
}

}  // namespace algchar
