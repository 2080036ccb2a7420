#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ramf {

using cplx = std::complex<double>;
using i64 = std::int64_t;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Error kinds surfaced by the library. All derive from std::runtime_error so
// callers can catch broadly.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidArgument : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct UnsupportedInput : Error {
    using Error::Error;
};
struct InvalidSpec : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct StructuralError : Error {
    using Error::Error;
};
struct InternalError : Error {
    using Error::Error;
};
struct ExtractionError : Error {
    using Error::Error;
};

// z^n for integer n by repeated squaring.
inline cplx ipow(cplx z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r = 1.0;
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

inline double ipow(double x, int n) {
    if (n < 0) return 1.0 / ipow(x, -n);
    double r = 1.0;
    while (n) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

inline i64 floor_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace ramf
