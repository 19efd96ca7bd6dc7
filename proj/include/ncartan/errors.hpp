#pragma once

#include <stdexcept>
#include <string>

namespace ncartan {

// Bad user input: invalid prime, malformed file, size guard exceeded.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal identity failed to hold. Always indicates a bug (or a wrong
// formula), never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InvariantViolation(what);
}

}  // namespace ncartan
