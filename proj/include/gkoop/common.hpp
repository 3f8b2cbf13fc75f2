// Shared scalar/matrix aliases and the error taxonomy used across the library.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace gkoop {

using Mat = Eigen::MatrixXcd;   // group / algebra elements in a faithful matrix rep
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;   // chart coordinates, algebra coordinates
using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Defaults quoted by the operation contracts; overridable per call site.
inline constexpr double kDefaultFdStep = 1e-5;
inline constexpr double kDefaultRk4Step = 1e-3;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exp is not invertible at the requested group element (e.g. an SO(3)
// rotation by pi); local lifts are undefined there.
class OutOfInjectivityDomain : public Error {
 public:
  using Error::Error;
};

// A matrix claimed to be tangent at g failed the algebra-projection
// residual check after left translation.
class NotTangent : public Error {
 public:
  using Error::Error;
};

// dz has rank < d at the evaluation point; level-set machinery undefined.
class NotRegular : public Error {
 public:
  using Error::Error;
};

class NonFiniteState : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class DirectionMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionNearZero : public Error {
 public:
  using Error::Error;
};

class ZeroValue : public Error {
 public:
  using Error::Error;
};

class LiftDomainEmpty : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline bool all_finite(const RVec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

// Reduce an angle into [0, 2*pi).
inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// Shift an angular difference into (-pi, pi].
inline double wrap_diff(double d) {
  double r = std::fmod(d, kTwoPi);
  if (r > kPi) r -= kTwoPi;
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace gkoop
