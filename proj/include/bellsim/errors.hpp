#pragma once

#include <stdexcept>
#include <string>

namespace bellsim {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric input outside its admissible range (angle, probability,
// correlation, counts), or a structural precondition violated.
class DomainError : public Error {
public:
    using Error::Error;
};

// Configuration text failed to parse or validate.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A requested quantity does not exist, e.g. the violation boundary of a
// model whose CH statistic never exceeds 1.
class NoViolationError : public Error {
public:
    using Error::Error;
};

} // namespace bellsim
