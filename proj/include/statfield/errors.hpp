#pragma once

#include <stdexcept>
#include <string>

namespace statfield {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Support of a test function would leave the grid.
class SupportError : public Error {
public:
    using Error::Error;
};

/// Translation vector is not an integer multiple of the grid spacing.
class AlignmentError : public Error {
public:
    using Error::Error;
};

class MemoryGuardError : public Error {
public:
    using Error::Error;
};

class SizeMismatchError : public Error {
public:
    using Error::Error;
};

/// Probe family too ill-conditioned (or rank deficient) for a linear solve.
class ConditioningError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace statfield
