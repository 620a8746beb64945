#pragma once

#include <stdexcept>
#include <string>

namespace certreg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unusable input data. Carries the 1-based line number when
/// the problem was found while parsing a text stream (0 otherwise).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The optimizer could not reach its stopping target, or produced
/// non-finite values.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace certreg
