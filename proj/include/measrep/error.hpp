#pragma once

#include <stdexcept>
#include <string>

namespace measrep {

/// Violated precondition or invariant of a domain operation (bad sizes,
/// non-probability weights, enumeration limits exceeded, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// File could not be opened or parsed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace measrep
