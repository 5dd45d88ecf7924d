#pragma once

#include <stdexcept>
#include <string>

namespace entkit {

// Base class for all toolkit errors. Callers that don't care about the
// specific failure can catch this one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A matrix expected to be Hermitian was not, within tolerance.
class NotHermitianError : public Error {
public:
    using Error::Error;
};

// A matrix expected to be positive semidefinite had an eigenvalue below
// the clamping tolerance.
class NotPsdError : public Error {
public:
    using Error::Error;
};

// Matrix or vector dimensions are inconsistent with each other or with a
// subsystem layout.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A subsystem layout is malformed (empty, or a factor of dimension < 2).
class LayoutError : public Error {
public:
    using Error::Error;
};

// A subsystem index or cut specification is out of range, duplicated, or
// does not describe a proper bipartition.
class IndexError : public Error {
public:
    using Error::Error;
};

// A matrix expected to be unitary was not, within tolerance.
class NotUnitaryError : public Error {
public:
    using Error::Error;
};

// Two parallel lists (operators and labels, outcomes and follow-ups, ...)
// disagree in length.
class CountError : public Error {
public:
    using Error::Error;
};

// A named built-in state or measure does not exist.
class UnknownNameError : public Error {
public:
    using Error::Error;
};

// A scalar argument is outside its documented domain.
class RangeError : public Error {
public:
    using Error::Error;
};

// A state object violates its defining invariants (normalization, unit
// trace, measurement completeness, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A state file or command-line value could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace entkit
