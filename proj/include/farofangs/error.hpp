#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace farofangs {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that cannot be combined: row-count mismatch, width mismatch,
// augmentation below the current width.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Inputs outside an operation's domain (penalty out of range, non-finite
// costs, empty sample sets, search settings inconsistent with B).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Refused because the requested work would be factorial in size.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A located failure while reading a matrix file.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(source + ":" + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        source_(std::move(source)),
        line_(line),
        column_(column) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace farofangs
