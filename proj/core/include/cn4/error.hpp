#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cn4 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Wrong column count for the declared table.
class SchemaError : public ParseError {
 public:
  using ParseError::ParseError;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A quantity that has no value for the given input (empty graph, etc).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cn4
