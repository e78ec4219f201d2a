#pragma once

#include <stdexcept>
#include <string>

namespace lattdiv {

/// Malformed input: bad degree, non-bijective images, unknown names, broken
/// preconditions. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap (element cap, lattice work limit, sieve size)
/// would be exceeded. The CLI maps this to exit code 3.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-check failed; results must not be reported.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lattdiv
