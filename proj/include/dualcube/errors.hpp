#pragma once

#include <stdexcept>
#include <string>

namespace dualcube {

/// Raised when an enumeration would exceed its configured work budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a freshly built object fails its own invariant checks.
/// Seeing one means the implementation is wrong, not the input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace dualcube
