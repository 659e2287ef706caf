#pragma once

#include <stdexcept>
#include <string>

namespace bellgap {

// Mismatched tensor shapes / scenarios between paired objects.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was asked of an object it does not support (wrong kind,
// wrong party count, ...).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or LP would exceed the configured budget. The message
// names the offending bound so callers can report it.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::string message, std::string bound)
      : std::runtime_error(std::move(message)), bound_(std::move(bound)) {}

  const std::string& bound() const { return bound_; }

 private:
  std::string bound_;
};

// A constructed object failed one of its invariants; the message lists
// the failed check.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bellgap
