#include "hyper/core.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace hyper {

const char* to_string(NullAxis axis) {
  return axis == NullAxis::N1 ? "n1" : "n2";
}

DivisionByZeroDivisor::DivisionByZeroDivisor(std::optional<NullAxis> axis)
    : Error(axis ? std::string("division by a divisor of zero on the ") +
                       to_string(*axis) + " axis of the null cone"
                 : std::string("division by zero (apex of the null cone)")),
      axis_(axis) {}

NonFiniteSample::NonFiniteSample(double x, double y)
    : Error("non-finite function sample near (" + format_real(x) + ", " +
            format_real(y) + ")"),
      x_(x),
      y_(y) {}

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual)
    : Error("dimension mismatch: expected " + std::to_string(expected) +
            ", got " + std::to_string(actual)) {}

NonFiniteLoss::NonFiniteLoss(std::size_t epoch)
    : Error("training diverged: non-finite loss or parameter at epoch " +
            std::to_string(epoch)),
      epoch_(epoch) {}

HyperbolicNumber::HyperbolicNumber(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw NonFiniteValue("hyperbolic number components must be finite");
  }
}

HyperbolicNumber add(HyperbolicNumber a, HyperbolicNumber b) {
  return {a.x() + b.x(), a.y() + b.y()};
}

HyperbolicNumber sub(HyperbolicNumber a, HyperbolicNumber b) {
  return {a.x() - b.x(), a.y() - b.y()};
}

HyperbolicNumber negate(HyperbolicNumber z) { return {-z.x(), -z.y()}; }

HyperbolicNumber scale(double s, HyperbolicNumber z) {
  return {s * z.x(), s * z.y()};
}

HyperbolicNumber mul(HyperbolicNumber a, HyperbolicNumber b) {
  return {a.x() * b.x() + a.y() * b.y(), a.x() * b.y() + a.y() * b.x()};
}

HyperbolicNumber conjugate(HyperbolicNumber z) { return {z.x(), -z.y()}; }

double modulus(HyperbolicNumber z) { return z.x() * z.x() - z.y() * z.y(); }

IdempotentCoords to_idempotent(HyperbolicNumber z) {
  return {z.x() + z.y(), z.x() - z.y()};
}

HyperbolicNumber from_idempotent(IdempotentCoords c) {
  return {0.5 * (c.xi + c.eta), 0.5 * (c.xi - c.eta)};
}

ElementClass classify(HyperbolicNumber z, double tol) {
  const auto [xi, eta] = to_idempotent(z);
  const double band = tol * std::max({1.0, std::abs(xi), std::abs(eta)});
  const bool xi_zero = std::abs(xi) <= band;
  const bool eta_zero = std::abs(eta) <= band;
  if (xi_zero && eta_zero) return {ElementKind::Zero, std::nullopt};
  if (eta_zero) return {ElementKind::ZeroDivisor, NullAxis::N1};
  if (xi_zero) return {ElementKind::ZeroDivisor, NullAxis::N2};
  return {ElementKind::Invertible, std::nullopt};
}

HyperbolicNumber divide(HyperbolicNumber z, HyperbolicNumber w, double tol) {
  const ElementClass cls = classify(w, tol);
  if (cls.kind != ElementKind::Invertible) throw DivisionByZeroDivisor(cls.axis);
  const IdempotentCoords num = to_idempotent(z);
  const IdempotentCoords den = to_idempotent(w);
  return from_idempotent({num.xi / den.xi, num.eta / den.eta});
}

HyperbolicNumber inverse(HyperbolicNumber z, double tol) {
  return divide(basis::one, z, tol);
}

std::string format_real(double v) {
  std::array<char, 32> buf{};
  // Adding +0.0 maps -0.0 to +0.0 and leaves everything else unchanged.
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v + 0.0);
  (void)ec;
  return std::string(buf.data(), end);
}

std::string to_string(HyperbolicNumber z) {
  const double y = z.y() + 0.0;
  if (std::signbit(y)) return format_real(z.x()) + " - " + format_real(-y) + "h";
  return format_real(z.x()) + " + " + format_real(y) + "h";
}

std::string to_string(IdempotentCoords c) {
  const double eta = c.eta + 0.0;
  const char* sep = std::signbit(eta) ? " - " : " + ";
  return format_real(c.xi) + "·n1" + sep + format_real(std::abs(eta)) + "·n2";
}

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Zero: return "Zero";
    case ElementKind::ZeroDivisor: return "ZeroDivisor";
    case ElementKind::Invertible: return "Invertible";
  }
  return "?";
}

std::string to_string(const ElementClass& c) {
  std::string s = to_string(c.kind);
  if (c.axis) s += std::string("(") + to_string(*c.axis) + " axis)";
  return s;
}

}  // namespace hyper
