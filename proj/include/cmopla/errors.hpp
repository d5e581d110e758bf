#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cmopla {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite objective or constraint value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Decision vector outside the problem box.
class BoundsError : public Error {
 public:
  BoundsError(std::string what, std::vector<std::size_t> indices)
      : Error(std::move(what)), indices_(std::move(indices)) {}
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// Arity mismatch between data and problem metadata.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based file row (header is row 1).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// A pipeline stage cannot run on the data it was given.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string what, std::vector<std::string> missing = {})
      : Error(std::move(what)), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;
};

/// Collects non-fatal findings from a stage.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

}  // namespace cmopla
