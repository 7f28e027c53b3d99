#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dehn {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label)
      : Error("unknown curve label '" + label + "'"), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

/// A rewrite move was asked to act where its preconditions do not hold.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class UnprovenRelation : public Error {
 public:
  explicit UnprovenRelation(const std::string& name)
      : Error("relation '" + name + "' is neither an axiom nor proven") {}
};

class InvalidRename : public Error {
 public:
  using Error::Error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class DuplicateName : public Error {
 public:
  explicit DuplicateName(const std::string& name)
      : Error("duplicate name '" + name + "'") {}
};

/// Integer arithmetic left the int64 range.
class Overflow : public Error {
 public:
  Overflow() : Error("integer overflow in exact matrix arithmetic") {}
};

}  // namespace dehn
