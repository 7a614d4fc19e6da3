#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homlie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class UnsupportedField : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class EmptyList : public Error {
public:
    using Error::Error;
};

class NotCertified : public Error {
public:
    using Error::Error;
};

/// A pointwise fuzzy set whose level cut is not closed under addition or
/// scaling; such a set has no flag representation.
class NotSubspaceLeveled : public Error {
public:
    using Error::Error;
};

class RetriesExhausted : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

/// A parsed document violates a structural invariant (the message names it).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Syntactic failure while reading a document. line/column are 1-based;
/// 0 means the position is unknown (semantic errors carry a path instead).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line(line), column(column) {}

    std::size_t line;
    std::size_t column;
};

} // namespace homlie
