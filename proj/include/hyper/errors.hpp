#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hyper {

/// Axis of the null cone a divisor of zero lies on.
///   N1: eta == 0, z = xi n1 (the line x = y)
///   N2: xi == 0,  z = eta n2 (the line x = -y)
enum class NullAxis { N1, N2 };

const char* to_string(NullAxis axis);

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A NaN or infinity reached a value type that only stores finite numbers.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// Division by an element on the null cone. `axis` is empty when the
/// divisor is zero itself.
class DivisionByZeroDivisor : public Error {
 public:
  explicit DivisionByZeroDivisor(std::optional<NullAxis> axis);
  std::optional<NullAxis> axis() const { return axis_; }

 private:
  std::optional<NullAxis> axis_;
};

/// Polar form requested for a point with x^2 == y^2.
class OnNullCone : public Error {
 public:
  using Error::Error;
};

/// Result of an elementary function is not representable.
class Overflow : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil or scan hit a non-finite function value.
class NonFiniteSample : public Error {
 public:
  NonFiniteSample(double x, double y);
  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_;
  double y_;
};

class InvalidDims : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual);
};

class NotDecoupleable : public Error {
 public:
  using Error::Error;
};

/// Training diverged; `epoch` is the zero-based epoch at which the loss or a
/// parameter stopped being finite.
class NonFiniteLoss : public Error {
 public:
  explicit NonFiniteLoss(std::size_t epoch);
  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

}  // namespace hyper
