#pragma once

#include <stdexcept>
#include <string>

namespace gedanken {

// Invalid physical parameters or inconsistent inputs (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Mode-count / sector / partition mismatches.
class DimensionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Sampling or mode-basis resolution rule violated (CLI exit code 3).
class ResolutionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Config-file problem with a source location (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string source, int line, int column, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + what),
        source_(std::move(source)), line_(line), column_(column) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  std::string source_;
  int line_ = 0;
  int column_ = 0;
};

// A numerical result violated the complementarity bound or the unitarity
// identity; this falsifies the implementation, not the physics (CLI exit 4).
class AuditViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace gedanken
