#pragma once

#include <stdexcept>
#include <string>

namespace saddlescape {

/// Base of every recoverable error raised by the library. Dimension
/// mismatches are programming errors and surface as std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function evaluation produced NaN/Inf.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// The proximal sub-solver did not reach its residual tolerance.
class ProxNonConvergence : public Error {
 public:
  using Error::Error;
};

/// Parameters violate a stepsize/inertia bound or an operation precondition.
class ConfigRejected : public Error {
 public:
  using Error::Error;
};

/// A corpus member's declared data disagrees with its own evaluators.
class CorpusInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace saddlescape
