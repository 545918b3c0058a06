#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace whichwhen {

/// Error class; the service maps it onto HTTP status codes and the CLI onto
/// exit codes.
enum class ErrorKind {
  Parse,     // malformed input document (CSV, JSON, flag values)
  Io,        // file system failures
  NotFound,  // unknown dataset / case / label
  Invalid,   // well-formed but semantically invalid request
};

/// All engine failures are reported through this exception. `reason()` is a
/// short machine-readable slug such as "crossed-thresholds".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string reason, const std::string& message)
      : std::runtime_error(message), kind_(kind), reason_(std::move(reason)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorKind kind_;
  std::string reason_;
};

/// CSV parse failure with the offending location. `row` is 1-based over data
/// rows (the header is row 0).
class ParseError : public Error {
 public:
  ParseError(std::string reason, const std::string& message,
             std::optional<std::size_t> row = std::nullopt,
             std::optional<std::string> column = std::nullopt)
      : Error(ErrorKind::Parse, std::move(reason), message),
        row_(row),
        column_(std::move(column)) {}

  const std::optional<std::size_t>& row() const noexcept { return row_; }
  const std::optional<std::string>& column() const noexcept { return column_; }

 private:
  std::optional<std::size_t> row_;
  std::optional<std::string> column_;
};

}  // namespace whichwhen
