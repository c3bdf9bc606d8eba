#pragma once

#include <stdexcept>
#include <string>

namespace ratreal {

/// Caller passed arguments of the wrong shape or outside the documented domain.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inversion of a matrix (or scalar) that has none.
class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A mathematical hypothesis of an operation does not hold for the input.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal data (a presentation, a report) contradicts itself.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A certificate failed exact re-multiplication, or a theorem check found a
/// counterexample. Either one means a bug somewhere.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Closure enumeration ran past its configured cap.
class CapExceededError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed scenario/report text.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ratreal
