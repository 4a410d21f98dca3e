#include "hyper/polar.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hyper {

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::Right: return "Right";
    case Quadrant::Left: return "Left";
    case Quadrant::Top: return "Top";
    case Quadrant::Bottom: return "Bottom";
    case Quadrant::NullCone: return "NullCone";
  }
  return "?";
}

Quadrant quadrant_of(HyperbolicNumber z, double tol) {
  if (classify(z, tol).kind != ElementKind::Invertible) return Quadrant::NullCone;
  const auto [xi, eta] = to_idempotent(z);
  // xi * eta = x^2 - y^2; compare signs instead of forming the product.
  const bool spacelike = (xi > 0) == (eta > 0);
  if (spacelike) return z.x() > 0 ? Quadrant::Right : Quadrant::Left;
  return z.y() > 0 ? Quadrant::Top : Quadrant::Bottom;
}

PolarForm to_polar(HyperbolicNumber z, double tol) {
  const Quadrant q = quadrant_of(z, tol);
  if (q == Quadrant::NullCone) {
    throw OnNullCone("polar form undefined on the null cone at " + to_string(z));
  }
  const auto [xi, eta] = to_idempotent(z);
  const double product = std::abs(xi * eta);
  const double rho = std::isnormal(product) ? std::sqrt(product)
                                            : std::sqrt(std::abs(xi)) * std::sqrt(std::abs(eta));
  // artanh(r) = 1/2 ln((1 + r) / (1 - r)). With r = y/x (Right, Left) or
  // r = x/y (Top, Bottom) the ratio (1 + r) / (1 - r) is |xi / eta| in every
  // quadrant, which avoids the cancellation in 1 - r near the cone.
  const double ratio = std::abs(xi / eta);
  const double theta = std::isnormal(ratio)
                           ? 0.5 * std::log(ratio)
                           : 0.5 * (std::log(std::abs(xi)) - std::log(std::abs(eta)));
  assert(std::isfinite(theta));
  return {rho, theta, q};
}

HyperbolicNumber quadrant_factor(Quadrant q) {
  switch (q) {
    case Quadrant::Right: return {1.0, 0.0};
    case Quadrant::Left: return {-1.0, 0.0};
    case Quadrant::Top: return {0.0, 1.0};
    case Quadrant::Bottom: return {0.0, -1.0};
    case Quadrant::NullCone: break;
  }
  throw std::invalid_argument("NullCone has no polar quadrant factor");
}

HyperbolicNumber from_polar(const PolarForm& p) {
  if (!(p.rho > 0) || !std::isfinite(p.rho) || !std::isfinite(p.theta)) {
    throw std::invalid_argument("from_polar requires finite rho > 0 and finite theta");
  }
  const double c = p.rho * std::cosh(p.theta);
  const double s = p.rho * std::sinh(p.theta);
  switch (p.quadrant) {
    case Quadrant::Right: return {c, s};
    case Quadrant::Left: return {-c, -s};
    case Quadrant::Top: return {s, c};
    case Quadrant::Bottom: return {-s, -c};
    case Quadrant::NullCone: break;
  }
  throw std::invalid_argument("from_polar: NullCone has no polar form");
}

HyperbolicNumber exp(HyperbolicNumber z) {
  const double ex = std::exp(z.x());
  const double ch = std::cosh(z.y());
  double u = ex * ch;
  double v = ex * std::sinh(z.y());
  if (!std::isfinite(ex) || !std::isfinite(ch)) {
    // One factor over- or underflowed while the product may still be
    // representable: e^x cosh y = (e^{x+y} + e^{x-y}) / 2.
    const double ep = std::exp(z.x() + z.y());
    const double em = std::exp(z.x() - z.y());
    u = 0.5 * ep + 0.5 * em;
    v = 0.5 * ep - 0.5 * em;
  }
  if (!std::isfinite(u) || !std::isfinite(v)) {
    throw Overflow("exp overflows at " + to_string(z));
  }
  return {u, v};
}

HyperbolicNumber polar_mul(HyperbolicNumber a, HyperbolicNumber z, double tol) {
  const PolarForm pa = to_polar(a, tol);
  const PolarForm pz = to_polar(z, tol);
  const HyperbolicNumber rotated =
      from_polar({pa.rho * pz.rho, pa.theta + pz.theta, Quadrant::Right});
  return mul(mul(quadrant_factor(pa.quadrant), quadrant_factor(pz.quadrant)), rotated);
}

}  // namespace hyper
