#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinbath {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4c = Eigen::Matrix4cd;

/// Thrown when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a requested quantity is infinite for the given input
/// (e.g. a concurrence decay time for a state with no concurrence).
class Divergence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A non-negative half-integer spin, stored as twice its value so that
/// sector arithmetic stays exact.
class HalfSpin {
 public:
  constexpr HalfSpin() = default;

  static constexpr HalfSpin from_twice(int twice) { return HalfSpin(twice); }
  static HalfSpin from_value(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  /// I(I+1), the eigenvalue of the squared spin operator.
  constexpr double casimir() const { return value() * (value() + 1.0); }
  /// 2I+1.
  constexpr int multiplicity() const { return twice_ + 1; }

  friend constexpr auto operator<=>(HalfSpin, HalfSpin) = default;

 private:
  constexpr explicit HalfSpin(int twice) : twice_(twice) {}
  int twice_ = 0;
};

inline HalfSpin HalfSpin::from_value(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (value < 0.0 || std::abs(twice - rounded) > 1e-9) {
    throw InvalidInput("spin must be a non-negative half-integer, got " +
                       std::to_string(value));
  }
  return HalfSpin(static_cast<int>(rounded));
}

}  // namespace spinbath
