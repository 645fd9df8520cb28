#pragma once

#include <stdexcept>
#include <string>

namespace copa {

// Base of every error raised by the library. The CLI maps the subclasses
// onto exit codes (config 2, domain 3, I/O 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (bad JSON, bad embedding line, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Domain-level failures.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Dataset invariant violation; the message names the offending record.
class ValidationError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnknownTopic : public DomainError {
 public:
  explicit UnknownTopic(const std::string& topic)
      : DomainError("unknown topic: " + topic), topic_(topic) {}
  const std::string& topic() const noexcept { return topic_; }

 private:
  std::string topic_;
};

class UnknownAction : public DomainError {
 public:
  explicit UnknownAction(const std::string& action)
      : DomainError("unknown action: " + action) {}
};

class UnknownStance : public DomainError {
 public:
  using DomainError::DomainError;
};

class LengthMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class EmptyTrainingSet : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace copa
