#pragma once

#include <stdexcept>
#include <string>

namespace mcpc {

// Bad values passed to a library entry point (shapes, ranges, non-finite input).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid scenario configuration (file contents, overrides, derived invariants).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An optimizer gave up or returned an unusable result.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mcpc
