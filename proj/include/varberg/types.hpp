#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace varberg {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 8;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

// Bad arguments: dimension mismatch, points outside the ball, parameters out of range.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A constructed object failed its invariants (exponent range, self-map escaping the ball, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root finding or quadrature could not produce a finite answer.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace varberg
