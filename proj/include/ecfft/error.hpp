#pragma once

#include <stdexcept>
#include <string>

namespace ecfft {

/// A caller-side precondition failed (bad size, infeasible depth, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A structural invariant of a tree, plan or advice table does not hold.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or incompatible serialized data.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ecfft
