#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iota {

// Base of every toolkit error. ValidationError covers bad inputs and
// contract violations (CLI exit code 1); NumericalError covers failures
// of the numerical machinery itself (CLI exit code 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class NonSquare : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NegativeEntry : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonConvergence : public NumericalError {
public:
    NonConvergence(const std::string& what, std::size_t iterations)
        : NumericalError(what), iterations(iterations) {}
    std::size_t iterations;
};

class SingularMatrix : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotProductive : public NumericalError {
public:
    NotProductive(const std::string& what, double lambda)
        : NumericalError(what), lambda(lambda) {}
    double lambda;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t line)
        : ValidationError(what), line(line) {}
    std::size_t line;
};

class NegativeFlow : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class BalanceViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ZeroOutput : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ZeroCapital : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyGroup : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotSelfReplacing : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InfeasibleRate : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NoLabor : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ReducibleSystem : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SingularOutputMatrix : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularNetOutput : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotInterindustrial : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonPositive : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IoFailure : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace iota
