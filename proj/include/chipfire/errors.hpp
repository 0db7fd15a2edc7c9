#pragma once

#include <stdexcept>
#include <string>

namespace chipfire {

/// Raised when an operation is called outside its precondition
/// (illegal move, invalid vertex, non-standard tableau, ...).
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configuration that should be a completed stabilization of the
/// starting pile does not have the one-chip-per-cell shape.
class ShapeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A search exceeded its configured state or size budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A firing log disagrees with the closed-form fire counts.
class InconsistentLogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chipfire
