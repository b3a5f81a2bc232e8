#pragma once

#include <stdexcept>

namespace quiver {

// Out-of-range vertex, malformed input, violated precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The input is valid but outside what the implementation supports
// (e.g. too many vertices for an exhaustive scan).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MultiplicityOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// A mathematical invariant that must hold failed at runtime. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace quiver
