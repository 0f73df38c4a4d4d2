#pragma once

#include <stdexcept>
#include <string>

namespace abcem {

// Configuration / input errors
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simulation-time errors
struct NonPositivePrice : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyPopulation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidSupport : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Estimator errors
struct ZeroVariance : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientSample : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPositiveEntry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace abcem
