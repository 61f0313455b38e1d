#pragma once

#include <stdexcept>
#include <string>

namespace spinconn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unrecognized builtin spacetime name.
struct UnknownSpacetime : Error {
  using Error::Error;
};

// Model parameter outside its admissible range.
struct InvalidParam : Error {
  using Error::Error;
};

// Point (or stencil point) outside the chart's validity domain.
struct DomainError : Error {
  using Error::Error;
};

// Metric not invertible at the evaluation point.
struct SingularMetric : Error {
  using Error::Error;
};

// Frame not invertible, or an orthonormalization pivot too small.
struct DegenerateFrame : Error {
  using Error::Error;
};

// Chirality operator fails to square to the identity.
struct NotInvolutive : Error {
  using Error::Error;
};

// Input components violate a structural identity they are assumed to obey.
struct InconsistentAlgebra : Error {
  using Error::Error;
};

// Gauge transformation not invertible at the evaluation point.
struct SingularGauge : Error {
  using Error::Error;
};

// Malformed run configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace spinconn
