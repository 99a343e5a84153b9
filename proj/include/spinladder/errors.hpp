#pragma once

#include <stdexcept>
#include <string>

namespace spinladder {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values or malformed configuration input.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A closed-form expression was evaluated outside its domain of definition
// (negative radicand, side condition violated, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// An effective-model expression has a vanishing energy denominator at the
// requested detunings; the perturbative construction breaks down there.
class SingularDenominator : public Error {
public:
    using Error::Error;
};

// The adaptive integrator would need a step below the hard floor to meet
// the requested tolerance.
class StepSizeUnderflow : public Error {
public:
    using Error::Error;
};

// Operator and state dimensions disagree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// The dense eigensolver failed, or its output did not pass the residual
// and orthonormality checks.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

// Continuation of an eigenbranch lost track of the followed state.
class LostBranch : public Error {
public:
    using Error::Error;
};

} // namespace spinladder
