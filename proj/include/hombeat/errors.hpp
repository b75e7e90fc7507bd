#pragma once

#include <stdexcept>
#include <string>

namespace hombeat {

// User/configuration mistakes: invalid parameters, malformed inputs.
// The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed data file; message carries the 1-based line number.
struct ParseError : ConfigError {
    using ConfigError::ConfigError;
};

// Numerical failures (non-convergence, unidentifiable parameter).
// The CLI maps these to exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature did not reach the requested tolerance within the node cap.
struct QuadratureError : NumericalError {
    QuadratureError(const std::string& msg, long nodes, double est_abs_error)
        : NumericalError(msg), nodes(nodes), est_abs_error(est_abs_error) {}
    long nodes;
    double est_abs_error;
};

// The parameter cannot be estimated from the given data/configuration.
struct IdentifiabilityError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace hombeat
