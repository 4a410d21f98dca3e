#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "hyper/polar.hpp"
#include "test_support.hpp"

using namespace hyper;
using hyper::test::close;
using hyper::test::close_rel;
using hyper::test::norm;
using hyper::test::Rng;

namespace {

// Truncated sum of z^n / n! in hyperbolic arithmetic.
HyperbolicNumber exp_series(HyperbolicNumber z, int terms) {
  HyperbolicNumber sum{0, 0};
  HyperbolicNumber term = basis::one;
  for (int n = 0; n < terms; ++n) {
    sum = sum + term;
    term = (1.0 / (n + 1)) * mul(term, z);
  }
  return sum;
}

// Random point whose idempotent coordinates both have magnitude in
// [lo, hi] with random signs, so it sits well away from the cone.
HyperbolicNumber off_cone(Rng& rng, double lo, double hi) {
  const double xi = rng.uniform(lo, hi) * (rng.uniform(0, 1) < 0.5 ? -1 : 1);
  const double eta = rng.uniform(lo, hi) * (rng.uniform(0, 1) < 0.5 ? -1 : 1);
  return from_idempotent({xi, eta});
}

}  // namespace

TEST_CASE("quadrant_of") {
  CHECK(quadrant_of({2, 1}) == Quadrant::Right);
  CHECK(quadrant_of({-2, 1}) == Quadrant::Left);
  CHECK(quadrant_of({1, 3}) == Quadrant::Top);
  CHECK(quadrant_of({1, -3}) == Quadrant::Bottom);
  CHECK(quadrant_of({1, 1}) == Quadrant::NullCone);
  CHECK(quadrant_of({-4, 4}) == Quadrant::NullCone);
  CHECK(quadrant_of({0, 0}) == Quadrant::NullCone);
  CHECK(quadrant_of({1 + 1e-14, 1}) == Quadrant::NullCone);
  CHECK(quadrant_of({1 + 1e-14, 1}, 0.0) == Quadrant::Right);
}

TEST_CASE("to_polar examples") {
  const auto p = to_polar({2, 0});
  CHECK(p.rho == 2.0);
  CHECK(p.theta == 0.0);
  CHECK(p.quadrant == Quadrant::Right);

  const auto q = to_polar({5, 3});
  CHECK(q.rho == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(q.theta == doctest::Approx(std::atanh(0.6)).epsilon(1e-15));
  CHECK(q.theta == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(q.quadrant == Quadrant::Right);
  CHECK(close(from_polar(q), {5, 3}, 1e-12, 5.0));

  const auto left = to_polar({-2, 0});
  CHECK(left.rho == 2.0);
  CHECK(left.theta == 0.0);
  CHECK(left.quadrant == Quadrant::Left);

  // Top/Bottom use artanh(x / y).
  const auto top = to_polar({3, 5});
  CHECK(top.quadrant == Quadrant::Top);
  CHECK(top.rho == doctest::Approx(4.0));
  CHECK(top.theta == doctest::Approx(std::atanh(0.6)));
  const auto bottom = to_polar({1, -3});
  CHECK(bottom.quadrant == Quadrant::Bottom);
  CHECK(bottom.rho == doctest::Approx(std::sqrt(8.0)));
  CHECK(bottom.theta == doctest::Approx(std::atanh(-1.0 / 3.0)));

  CHECK_THROWS_AS(to_polar({1, 1}), OnNullCone);
  CHECK_THROWS_AS(to_polar({0, 0}), OnNullCone);
}

TEST_CASE("from_polar examples") {
  CHECK(from_polar({1, 0, Quadrant::Right}) == HyperbolicNumber{1, 0});
  CHECK(from_polar({1, 0, Quadrant::Top}) == HyperbolicNumber{0, 1});
  CHECK(from_polar({1, 0, Quadrant::Left}) == HyperbolicNumber{-1, 0});
  CHECK(from_polar({1, 0, Quadrant::Bottom}) == HyperbolicNumber{0, -1});
  CHECK(close(from_polar({4, std::atanh(0.6), Quadrant::Right}), {5, 3}, 1e-12, 5.0));

  const auto back = to_polar(from_polar({4, std::atanh(0.6), Quadrant::Right}));
  CHECK(back.rho == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(back.theta == doctest::Approx(std::atanh(0.6)).epsilon(1e-12));

  CHECK_THROWS_AS(from_polar({0, 0, Quadrant::Right}), std::invalid_argument);
  CHECK_THROWS_AS(from_polar({-1, 0, Quadrant::Right}), std::invalid_argument);
  CHECK_THROWS_AS(from_polar({1, 0, Quadrant::NullCone}), std::invalid_argument);
}

TEST_CASE("exp examples") {
  CHECK(hyper::exp({0, 0}) == basis::one);
  const auto e1 = hyper::exp({1, 0});
  CHECK(e1.x() == doctest::Approx(std::numbers::e).epsilon(1e-15));
  CHECK(e1.y() == 0.0);

  const HyperbolicNumber z{0, std::numbers::ln2};
  const auto e = hyper::exp(z);
  CHECK(close(e, {1.25, 0.75}, 1e-15, 1.25));
  CHECK(close(e, exp_series(z, 30), 1e-14, 1.25));

  const HyperbolicNumber w{-0.4, 1.7};
  CHECK(close_rel(hyper::exp(w), exp_series(w, 30), 1e-14));

  CHECK_THROWS_AS(hyper::exp({800, 0}), Overflow);
  CHECK_THROWS_AS(hyper::exp({0, 800}), Overflow);
  // cosh y overflows on its own but e^x cosh y does not.
  const auto big = hyper::exp({-300, 720});
  CHECK(close_rel(big, {0.5 * std::exp(420.0), 0.5 * std::exp(420.0)}, 1e-13));
}

TEST_CASE("polar_mul examples") {
  CHECK(close(polar_mul({2, 0}, {5, 3}), {10, 6}, 1e-12, 10.0));
  CHECK(close(polar_mul({5, 3}, {5, -3}), {16, 0}, 1e-12, 16.0));
  CHECK(close(polar_mul({5, 3}, {5, -3}), mul({5, 3}, {5, -3}), 1e-12, 16.0));
  CHECK_THROWS_AS(polar_mul({1, 1}, {2, 0}), OnNullCone);
  CHECK_THROWS_AS(polar_mul({2, 0}, {3, -3}), OnNullCone);
  // Every pair of quadrants.
  const HyperbolicNumber reps[] = {{3, 1}, {-3, 1}, {1, 3}, {1, -3}};
  for (const auto a : reps) {
    for (const auto z : reps) CHECK(close_rel(polar_mul(a, z), mul(a, z), 1e-12));
  }
}

TEST_CASE("round trip through polar form") {
  Rng rng(42);
  int tested = 0;
  while (tested < 10000) {
    const auto z = rng.hyper(10);
    if (std::abs(z.x() * z.x() - z.y() * z.y()) <= 1e-6) continue;
    ++tested;
    CHECK(close_rel(from_polar(to_polar(z)), z, 1e-12));
  }
  // Points just off the cone.
  for (int k = 0; k < 1000; ++k) {
    const double s = rng.uniform(-10, 10);
    const double d = rng.uniform(1e-6, 1e-3);
    const HyperbolicNumber z{s, (k % 2 ? s : -s) + (s > 0 ? d : -d)};
    if (std::abs(z.x() * z.x() - z.y() * z.y()) <= 1e-6) continue;
    CHECK(close_rel(from_polar(to_polar(z)), z, 1e-12));
  }
}

TEST_CASE("exp is a homomorphism from addition to multiplication") {
  Rng rng(8);
  for (int k = 0; k < 5000; ++k) {
    const auto a = rng.hyper(10);
    const auto b = rng.hyper(10);
    // mul in (x, y) coordinates cancels when the y parts have opposite
    // signs, so its rounding error scales with |e^a|_1 |e^b|_1.
    const auto ea = hyper::exp(a);
    const auto eb = hyper::exp(b);
    CHECK(close(hyper::exp(a + b), mul(ea, eb), 1e-10, hyper::test::norm1(ea) * hyper::test::norm1(eb)));
  }
}

TEST_CASE("polar_mul agrees with mul off the cone") {
  Rng rng(12);
  for (int k = 0; k < 5000; ++k) {
    const auto a = rng.hyper(10);
    const auto z = rng.hyper(10);
    if (quadrant_of(a) == Quadrant::NullCone || quadrant_of(z) == Quadrant::NullCone) continue;
    CHECK(close_rel(polar_mul(a, z), mul(a, z), 1e-10));
  }
}

TEST_CASE("polar_mul scales the modulus") {
  Rng rng(13);
  for (int k = 0; k < 5000; ++k) {
    const auto a = off_cone(rng, 0.1, 10);
    const auto z = off_cone(rng, 0.1, 10);
    const double rho = to_polar(polar_mul(a, z)).rho;
    const double expected = to_polar(a).rho * to_polar(z).rho;
    CHECK(std::abs(rho - expected) <= 1e-10 * expected);
  }
}

TEST_CASE("exp acts componentwise in idempotent coordinates") {
  Rng rng(14);
  for (int k = 0; k < 5000; ++k) {
    const auto z = rng.hyper(10);
    const auto c = to_idempotent(hyper::exp(z));
    const auto zc = to_idempotent(z);
    const double e_xi = std::exp(zc.xi);
    const double e_eta = std::exp(zc.eta);
    // Relative to the larger channel: the smaller one is a difference of
    // nearly equal components when |y| is large.
    const double scale = std::max(e_xi, e_eta);
    CHECK(std::abs(c.xi - e_xi) <= 1e-12 * scale);
    CHECK(std::abs(c.eta - e_eta) <= 1e-12 * scale);
  }
}
