#pragma once

#include <stdexcept>
#include <string>

namespace totient_ratio {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A value exceeded the configured factorization bound.
class InputTooLarge : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class NoSolution : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// An oracle was asked to search beyond its configured limit.
class BoundTooLarge : public Error {
public:
    using Error::Error;
};

namespace detail {

inline long long checked_add(long long x, long long y) {
    long long out = 0;
    if (__builtin_add_overflow(x, y, &out)) {
        throw OverflowError("exponent overflow in addition");
    }
    return out;
}

inline long long checked_sub(long long x, long long y) {
    long long out = 0;
    if (__builtin_sub_overflow(x, y, &out)) {
        throw OverflowError("exponent overflow in subtraction");
    }
    return out;
}

inline long long checked_mul(long long x, long long y) {
    long long out = 0;
    if (__builtin_mul_overflow(x, y, &out)) {
        throw OverflowError("exponent overflow in multiplication");
    }
    return out;
}

} // namespace detail
} // namespace totient_ratio
