#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcdsat {

/// Malformed DIMACS / DRAT / model input. `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Invalid solver / policy configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Writing a proof or result stream failed.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace bcdsat
