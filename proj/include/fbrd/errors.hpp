#pragma once

#include <stdexcept>
#include <string>

namespace fbrd {

// Bad arguments / misuse of an interface (CLI exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A model hypothesis or input-data constraint failed (CLI exit code 3).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iteration did not converge or produced non-finite values (CLI exit code 4).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fbrd
