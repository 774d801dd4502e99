#pragma once

#include <stdexcept>
#include <string>

namespace noksurf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad dimensions, unknown labels, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The lattice model cannot support the requested computation, e.g. a
/// Zariski support that is not negative definite.
class ModelError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

/// A proven bound or classification failed on a concrete instance.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

class SearchFailure : public Error {
 public:
  using Error::Error;
};

class OracleMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class IOError : public Error {
 public:
  using Error::Error;
};

}  // namespace noksurf
