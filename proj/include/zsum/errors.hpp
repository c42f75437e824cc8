#pragma once

#include <stdexcept>
#include <string>

namespace zsum {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid values: malformed input, non-zero-sum blocks, quotient of a
/// non-divisor, and similar contract violations.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Structural mismatch: operands built over different groups.
class SpecMismatchError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Malformed text input (group spec strings, sequence literals).
class ParseError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A configured cap (group order, block length, factorization count) or a
/// wall-clock deadline was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

} // namespace zsum
