#pragma once

#include <stdexcept>
#include <string>

namespace charsum {

// Argument is not a unit of the group it was handed to (e.g. p | x).
class non_unit_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured size guard would be exceeded (table sizes, brute-force term
// counts). Callers can retry with a larger guard where one is exposed.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested closed-form evaluation has no formula for these parameters.
// Dispatchers treat this as "try the next strategy", direct callers see it.
class unsupported_regime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A character was asked to descend to a modulus below its conductor.
class not_reducible_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition does not hold (distinct from malformed input).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace charsum
