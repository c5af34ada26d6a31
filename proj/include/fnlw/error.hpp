#pragma once

#include <stdexcept>
#include <string>

namespace fnlw {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or configuration value failed validation. `field()` names the
// offending key so front ends can report it verbatim.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Time integration produced a non-finite value.
class InstabilityError : public Error {
 public:
  InstabilityError(long long step, const std::string& message)
      : Error("step " + std::to_string(step) + ": " + message), step_(step) {}

  long long step() const noexcept { return step_; }

 private:
  long long step_;
};

// Malformed file content (CSV schema, snapshot layout, JSON config).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace fnlw
