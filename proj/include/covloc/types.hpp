#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

namespace covloc {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Bad arguments or mismatched shapes/windows.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A matrix or state failed its mathematical contract (unit diagonal,
// Hermiticity, positive semidefiniteness, unit norm).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed file or JSON payload.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double diag = 1e-12;
    double herm = 1e-12;
    double psd = 1e-10;
};

} // namespace covloc
