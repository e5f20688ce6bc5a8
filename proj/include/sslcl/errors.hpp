#pragma once

#include <stdexcept>
#include <string>

namespace sslcl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegreeBoundViolated : public Error {
public:
    using Error::Error;
};

class DuplicateEdge : public Error {
public:
    using Error::Error;
};

class SelfLoop : public Error {
public:
    using Error::Error;
};

class UndecidedElement : public Error {
public:
    using Error::Error;
};

class CyclicError : public Error {
public:
    using Error::Error;
};

class KindMismatch : public Error {
public:
    using Error::Error;
};

class UnknownProblem : public Error {
public:
    using Error::Error;
};

class PaletteTooSmall : public Error {
public:
    using Error::Error;
};

class KTooLarge : public Error {
public:
    using Error::Error;
};

class InvalidPhaseStructure : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class Timeout : public Error {
public:
    explicit Timeout(long long budget)
        : Error("no stable legal configuration within " + std::to_string(budget) + " rounds"),
          budget_(budget) {}
    long long budget() const { return budget_; }

private:
    long long budget_;
};

}  // namespace sslcl
