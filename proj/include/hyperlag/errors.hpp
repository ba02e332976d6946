#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperlag {

/// Malformed hypergraph text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Input lies outside the hypothesis of a closed-form result.
class HypothesisError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A search would exceed its configured enumeration budget.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace hyperlag
