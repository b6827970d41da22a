#pragma once

#include <stdexcept>
#include <string>

namespace ube {

/// Raised when a series, quadrature or recursion cannot reach its tolerance.
class NumericalFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a computed probability leaves [0, 1] beyond numerical slack.
class ConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Config document errors. Carries the offending key and 1-based line.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string key, int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", key '" + key + "': " + what),
          key_(std::move(key)),
          line_(line) {}

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

  private:
    std::string key_;
    int line_;
};

}  // namespace ube
