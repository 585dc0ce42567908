#pragma once

#include <stdexcept>
#include <string>

namespace ltnc {

/// Invalid or out-of-range argument supplied by the caller.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition on an object's state was violated.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed packet or payload.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal state that must be unreachable for valid inputs.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ltnc
