#pragma once

#include <stdexcept>
#include <string>

namespace cv2design {

// Invalid shapes (mismatched or empty matrices).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unsupported or out-of-range parameters (bad norm order, bad dimension
// parity, composite dimension where a prime is required, zero sample
// counts, ...).  CLI maps these to exit code 2.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParityError : ParameterError {
    using ParameterError::ParameterError;
};

struct PrimalityError : ParameterError {
    using ParameterError::ParameterError;
};

// Refusal to run a computation whose cost estimate is out of bounds unless
// explicitly overridden.
struct ResourceError : ParameterError {
    using ParameterError::ParameterError;
};

// Numerical failures (non-converged quadrature, non-finite results).  CLI
// maps these to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The state carries (almost) no probability mass inside the discretisation
// window, so projecting it is meaningless.
struct WindowError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace cv2design
