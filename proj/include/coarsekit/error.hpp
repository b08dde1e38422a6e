#pragma once

#include <stdexcept>
#include <string>

namespace coarsekit {

/// Malformed input: bad metric tables, bad JSON, out-of-range indices.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematically meaningful hypothesis of an operation does not hold
/// (e.g. a point of A lies farther than R from B).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested construction exists only for some families.
class NotImplementedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An identity that must hold by construction failed. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

}  // namespace coarsekit
