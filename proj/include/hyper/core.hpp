#pragma once

/**
 * @file core.hpp
 * @brief Hyperbolic (split-complex) numbers z = x + h y with h^2 = +1.
 *
 * The ring is diagonalized by the idempotent basis
 *   n1 = (1 + h) / 2,   n2 = (1 - h) / 2,
 * n1^2 = n1, n2^2 = n2, n1 n2 = 0. In that basis z = xi n1 + eta n2 with
 * xi = x + y, eta = x - y, and multiplication acts componentwise.
 * Elements with xi == 0 or eta == 0 (the lines x = +-y) are divisors of zero
 * and have no inverse.
 */

#include <optional>
#include <string>

#include "hyper/errors.hpp"

namespace hyper {

inline constexpr double kDefaultZeroTol = 1e-12;

class HyperbolicNumber {
 public:
  constexpr HyperbolicNumber() = default;
  /// Throws NonFiniteValue if either component is NaN or infinite.
  HyperbolicNumber(double x, double y);

  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }

  friend bool operator==(const HyperbolicNumber&, const HyperbolicNumber&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

/// Coordinates in the {n1, n2} basis.
struct IdempotentCoords {
  double xi = 0.0;
  double eta = 0.0;

  friend bool operator==(const IdempotentCoords&, const IdempotentCoords&) = default;
};

enum class ElementKind { Zero, ZeroDivisor, Invertible };

struct ElementClass {
  ElementKind kind = ElementKind::Zero;
  std::optional<NullAxis> axis;  // set only for ZeroDivisor

  friend bool operator==(const ElementClass&, const ElementClass&) = default;
};

/// Well-known constants.
namespace basis {
inline const HyperbolicNumber one{1.0, 0.0};
inline const HyperbolicNumber h{0.0, 1.0};
inline const HyperbolicNumber n1{0.5, 0.5};
inline const HyperbolicNumber n2{0.5, -0.5};
}  // namespace basis

HyperbolicNumber add(HyperbolicNumber a, HyperbolicNumber b);
HyperbolicNumber sub(HyperbolicNumber a, HyperbolicNumber b);
HyperbolicNumber negate(HyperbolicNumber z);
HyperbolicNumber scale(double s, HyperbolicNumber z);

/// (a.x b.x + a.y b.y) + h (a.x b.y + a.y b.x)
HyperbolicNumber mul(HyperbolicNumber a, HyperbolicNumber b);

/// x - h y
HyperbolicNumber conjugate(HyperbolicNumber z);

/// z zbar = x^2 - y^2. Sign-indefinite.
double modulus(HyperbolicNumber z);

IdempotentCoords to_idempotent(HyperbolicNumber z);
HyperbolicNumber from_idempotent(IdempotentCoords c);

/// A coordinate counts as zero when |c| <= tol * max(1, |xi|, |eta|).
ElementClass classify(HyperbolicNumber z, double tol = kDefaultZeroTol);

/// z / w = (xi/xi') n1 + (eta/eta') n2.
/// Throws DivisionByZeroDivisor unless classify(w, tol) is Invertible.
HyperbolicNumber divide(HyperbolicNumber z, HyperbolicNumber w,
                        double tol = kDefaultZeroTol);

HyperbolicNumber inverse(HyperbolicNumber z, double tol = kDefaultZeroTol);

inline HyperbolicNumber operator+(HyperbolicNumber a, HyperbolicNumber b) { return add(a, b); }
inline HyperbolicNumber operator-(HyperbolicNumber a, HyperbolicNumber b) { return sub(a, b); }
inline HyperbolicNumber operator-(HyperbolicNumber z) { return negate(z); }
inline HyperbolicNumber operator*(HyperbolicNumber a, HyperbolicNumber b) { return mul(a, b); }
inline HyperbolicNumber operator*(double s, HyperbolicNumber z) { return scale(s, z); }

/// Shortest decimal that round-trips to the same double ("-0" prints as "0").
std::string format_real(double v);

/// "x + yh", or "x - |y|h" for negative y.
std::string to_string(HyperbolicNumber z);

/// "xi·n1 + eta·n2"
std::string to_string(IdempotentCoords c);

const char* to_string(ElementKind kind);
std::string to_string(const ElementClass& c);

}  // namespace hyper
