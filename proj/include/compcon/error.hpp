#pragma once

#include <stdexcept>
#include <string>

namespace compcon {

// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two boundaries that were supposed to agree (label lists, spaces) do not.
class BoundaryMismatch : public Error {
public:
    using Error::Error;
};

class LabelCollision : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// An enumeration oracle would exceed its configured cap.
class ExplosionError : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class InvalidValue : public Error {
public:
    using Error::Error;
};

class UnsupportedStructure : public Error {
public:
    using Error::Error;
};

class NotARelaxation : public Error {
public:
    using Error::Error;
};

// A morphism does not satisfy the constraint it was paired with.
class UnsatisfiedConstraint : public Error {
public:
    explicit UnsatisfiedConstraint(std::string witness)
        : Error("unsatisfied constraint: " + witness), witness_(std::move(witness)) {}

    const std::string& witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

// Raised when a certificate obtained by laxity fails a from-scratch re-check.
class LaxityViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class TypeCheckError : public Error {
public:
    using Error::Error;
};

}  // namespace compcon
