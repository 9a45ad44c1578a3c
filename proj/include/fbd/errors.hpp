#pragma once

#include <stdexcept>
#include <string>

namespace fbd {

// Base for every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Interval endpoints out of order, nonpositive scale, and similar.
class InvalidDomain : public Error {
 public:
  using Error::Error;
};

// Two grid functions that live on different measure spaces.
class IncompatibleSpace : public Error {
 public:
  using Error::Error;
};

// A functional evaluated outside the set where it is differentiable
// (e.g. the entropy coefficient 1 + ln g with a zero node).
class DomainViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Quadrature that did not converge, an iteration that diverged.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fbd
