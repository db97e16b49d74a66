#pragma once
// Exception hierarchy shared by all llrlab modules.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace llrlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated a precondition (dimension mismatch, empty input, malformed curve).
class ContractError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of a function (e.g. quantile of p >= 1).
class DomainError : public Error {
public:
    using Error::Error;
};

// Numerical failures: decompositions, conditioning, quadrature, geometry.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DecompositionError : public NumericalError {
public:
    DecompositionError(const std::string& what, std::size_t pivot)
        : NumericalError(what), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class ConditioningError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientDataError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateCostError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateGeometryError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Point lies on the fold of the score transformation (zero Jacobian).
class SingularityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class CoverageError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace llrlab
