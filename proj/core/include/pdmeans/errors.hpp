#pragma once

#include <stdexcept>
#include <string>

namespace pdmeans {

/// Base class for all pdmeans errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands have incompatible dimensions.
struct DimensionError : Error {
    using Error::Error;
};

/// A scalar function was evaluated outside its domain, or an input
/// violates a mathematical precondition.
struct DomainError : Error {
    using Error::Error;
};

/// A matrix required to be symmetric positive definite is not.
struct NotPositiveDefiniteError : DomainError {
    using DomainError::DomainError;
};

/// A matrix required to be invertible is numerically singular.
struct SingularError : Error {
    using Error::Error;
};

/// An internal self-check failed (result does not satisfy its own
/// defining equation to the required accuracy).
struct ConsistencyError : Error {
    using Error::Error;
};

/// An iteration left the region where the solution is known to live.
struct DivergenceError : Error {
    using Error::Error;
};

/// An inner solver failed to converge where a converged value was
/// required to proceed.
struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace pdmeans
