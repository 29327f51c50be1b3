#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cohomotopy {

// Caller passed arguments outside an operation's domain.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An algebraic model file violated a structural rule.
class ModelError : public std::runtime_error {
 public:
  ModelError(std::string rule, std::string location, const std::string& what)
      : std::runtime_error("[" + rule + "] " + location + ": " + what),
        rule_(std::move(rule)),
        location_(std::move(location)) {}

  const std::string& rule() const noexcept { return rule_; }
  const std::string& location() const noexcept { return location_; }

 private:
  std::string rule_;
  std::string location_;
};

// Data that should be coherent by construction is not (e.g. an exact
// sequence that fails to be exact). Usually means an invalid model.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cohomotopy
