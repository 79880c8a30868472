#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foveal {

/// Raised when caller-supplied values violate an operation's contract.
/// The CLI maps this family to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when reading or writing external data fails. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoxOutsideImage : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidNormalizedBox : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidLabel : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TargetOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LengthMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyScoreList : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class HeadSizeMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NoGroundTruth : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedFormat : public IoError {
 public:
  using IoError::IoError;
};

/// Malformed row in a CSV input; carries the 1-based line number.
class ParseError : public IoError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : IoError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace foveal
