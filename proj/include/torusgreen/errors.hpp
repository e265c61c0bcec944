#pragma once

#include <stdexcept>
#include <string>

namespace torusgreen {

// Input outside the domain of a function (bad b, pole, value outside a segment image).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class RangeError : public DomainError {
public:
    using DomainError::DomainError;
};

// Accessory parameter sits on one of the four corners where the correspondence degenerates.
class CornerError : public DomainError {
public:
    using DomainError::DomainError;
};

// Iteration failed or an internal identity check came out wrong.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InconsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class CensusIncomplete : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace torusgreen
