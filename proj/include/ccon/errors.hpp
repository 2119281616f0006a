#pragma once

#include <stdexcept>
#include <string>

namespace ccon {

// Base of every error thrown by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class InfeasibleBase : public Error {
public:
    using Error::Error;
};

class RecursionBudgetExceeded : public Error {
public:
    using Error::Error;
};

// No subset of at most delta constraints attains the value of a set.
class DimensionExceeded : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class DegenerateCircumcircle : public Error {
public:
    using Error::Error;
};

class NotStripeGeneric : public Error {
public:
    using Error::Error;
};

class NegativeRadicand : public Error {
public:
    using Error::Error;
};

class DuplicatePoints : public Error {
public:
    using Error::Error;
};

class ConnectivityRetryExhausted : public Error {
public:
    using Error::Error;
};

class UnsupportedSchedule : public Error {
public:
    using Error::Error;
};

class NotJointlyConnected : public Error {
public:
    using Error::Error;
};

class NotBijective : public Error {
public:
    using Error::Error;
};

class TimeVaryingNotSupported : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class PNotInQ : public Error {
public:
    using Error::Error;
};

class InitialGraphDisconnected : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace ccon
