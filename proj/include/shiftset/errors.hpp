#pragma once

#include <stdexcept>

namespace shiftset {

// Base class for all library failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: unparsable spec strings, malformed set files, violated
// preconditions.
struct InputError : Error {
    using Error::Error;
};

// A computation would need capacity past the configured horizon, or a
// query cannot be decided at the current capacity.
struct CapacityError : Error {
    using Error::Error;
};

}  // namespace shiftset
