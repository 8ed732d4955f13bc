#pragma once

#include <stdexcept>
#include <string>

namespace weyl {

// Base for every error the library raises; callers that only care about
// "something in weyl failed" catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InsufficientPrecision : public Error {
public:
    using Error::Error;
};

class GcdError : public Error {
public:
    using Error::Error;
};

class NotCoprime : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class RangeViolation : public Error {
public:
    using Error::Error;
};

class SplitTooLarge : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace weyl
