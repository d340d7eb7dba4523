#pragma once

// Shared scalar types, points in C^N (N <= 3), and the error hierarchy.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace koppel {

using Cpx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// 2*pi*i, the constant carried by interior multiplication delta_eta.
inline const Cpx kTwoPiI{0.0, 2.0 * kPi};

// A point in C^N, N <= 3; unused slots stay zero.
using Pt = std::array<Cpx, 3>;

inline Pt pt(Cpx a) { return {a, Cpx{}, Cpx{}}; }
inline Pt pt(Cpx a, Cpx b) { return {a, b, Cpx{}}; }
inline Pt pt(Cpx a, Cpx b, Cpx c) { return {a, b, c}; }

inline Pt operator-(const Pt& a, const Pt& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Pt operator+(const Pt& a, const Pt& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline double abs2(Cpx v) { return std::norm(v); }

// |p|^2 over the first n coordinates.
inline double norm2(const Pt& p, int n) {
  double t = 0;
  for (int j = 0; j < n; ++j) t += std::norm(p[j]);
  return t;
}

inline bool finite(Cpx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Evaluation requested on a declared singular set (diagonal, zero locus, ...).
struct SingularityError : Error {
  using Error::Error;
};

// Quadrature budget exhausted before the tail estimate met the tolerance.
// Carries the partial result.
struct AccuracyError : Error {
  Cpx partial;
  double err_estimate;
  AccuracyError(const std::string& msg, Cpx p, double e)
      : Error(msg), partial(p), err_estimate(e) {}
};

// A cutoff family failed to settle (successive differences not decreasing).
struct DivergenceError : Error {
  using Error::Error;
};

// A cross-checked internal invariant failed; never caught, always fatal.
struct InvariantViolation : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

}  // namespace koppel
