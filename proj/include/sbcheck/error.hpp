#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sbcheck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Lexical, syntactic or typing error in formula, CTL or model text.
class ParseError : public Error {
public:
  ParseError(SourcePos pos, const std::string& message)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos), detail_(message) {}

  SourcePos position() const { return pos_; }
  const std::string& detail() const { return detail_; }

private:
  SourcePos pos_;
  std::string detail_;
};

/// Structural problem in a system under construction (duplicate ids, missing init, ...).
class ModelError : public Error {
public:
  using Error::Error;
};

} // namespace sbcheck
