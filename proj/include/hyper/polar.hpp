#pragma once

// Hyperbolic polar coordinates, the exponential map, and multiplication as
// scaling plus hyperbolic rotation.
//
// Off the null cone every z is one of
//   Right:   z =  rho e^{h theta}     (x^2 > y^2, x > 0)
//   Left:    z = -rho e^{h theta}     (x^2 > y^2, x < 0)
//   Top:     z =  h rho e^{h theta}   (x^2 < y^2, y > 0)
//   Bottom:  z = -h rho e^{h theta}   (x^2 < y^2, y < 0)
// with rho = sqrt|x^2 - y^2| and e^{h theta} = cosh theta + h sinh theta.

#include "hyper/core.hpp"

namespace hyper {

enum class Quadrant { Right, Left, Top, Bottom, NullCone };

const char* to_string(Quadrant q);

struct PolarForm {
  double rho = 0.0;
  double theta = 0.0;
  Quadrant quadrant = Quadrant::Right;
};

/// NullCone when classify(z, tol) is not Invertible.
Quadrant quadrant_of(HyperbolicNumber z, double tol = kDefaultZeroTol);

/// Throws OnNullCone for points on (or within tol of) x = +-y.
PolarForm to_polar(HyperbolicNumber z, double tol = kDefaultZeroTol);

/// Throws std::invalid_argument for rho <= 0, a non-finite angle, or the
/// NullCone quadrant.
HyperbolicNumber from_polar(const PolarForm& p);

/// e^x (cosh y + h sinh y). Throws Overflow if the result is not finite.
HyperbolicNumber exp(HyperbolicNumber z);

/// The sign / h factor of a quadrant: +1, -1, +h, -h.
HyperbolicNumber quadrant_factor(Quadrant q);

/// Product computed as rho_a rho_z e^{h(theta_a + theta_z)} times the
/// product of the two quadrant factors. Throws OnNullCone if either factor
/// is on the cone.
HyperbolicNumber polar_mul(HyperbolicNumber a, HyperbolicNumber z,
                           double tol = kDefaultZeroTol);

}  // namespace hyper
