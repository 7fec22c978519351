#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teamlogic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position` is the 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error("position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Malformed or inconsistent model description. `line` is 1-based, 0 when
/// the error is not tied to a line. `source` (a file name) leads the
/// message when given.
class ModelError : public Error {
 public:
  ModelError(std::size_t line, const std::string& detail, const std::string& source = {})
      : Error((source.empty() ? "" : source + ": ") +
              (line == 0 ? detail : "line " + std::to_string(line) + ": " + detail)),
        line_(line),
        detail_(detail) {}

  std::size_t line() const { return line_; }
  /// The message without source and line.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// An enumeration or construction would exceed a configured size limit.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Formula and model (or two models) disagree on proposition symbols.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Operation applied to a formula outside its supported fragment.
class FragmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace teamlogic
