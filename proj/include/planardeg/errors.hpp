#pragma once

#include <stdexcept>
#include <string>

namespace planardeg {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Structurally malformed input (bad forest, bad witness, bad core, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance larger than an exhaustive routine is documented to handle.
class LimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A rejection sampler ran out of attempts.
class SamplerExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace planardeg
