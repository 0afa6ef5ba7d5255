#pragma once

#include <stdexcept>
#include <string>

namespace lifo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a word or token stream cannot be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or configuration. `field()` names the offending input.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// D^{ij} requested on a word that still contains flexible orders.
class DiscrepancyUndefined : public Error {
 public:
  using Error::Error;
};

/// A closed form requested outside the regime where it is known.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration larger than the configured guard.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

/// An injected symbol stream ran out, or a past stack hit its extension cap.
class StreamExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace lifo
