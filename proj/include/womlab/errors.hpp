#pragma once

#include <stdexcept>
#include <string>

namespace womlab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Nobody can observe two prices (for example every consumer has a single
/// friend), so the non-comparer/comparer ratio is unbounded.
class NoComparisonError : public Error {
public:
    using Error::Error;
};

/// A numerical intermediate overflowed or lost all precision.
class DivergedError : public Error {
public:
    using Error::Error;
};

/// No equilibrium with active trade exists for the given inputs.
class NoEquilibriumError : public Error {
public:
    using Error::Error;
};

} // namespace womlab
