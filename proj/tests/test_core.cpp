#include <cmath>
#include <limits>

#include "doctest.h"
#include "hyper/core.hpp"
#include "test_support.hpp"

using namespace hyper;
using hyper::test::close;
using hyper::test::norm1;
using hyper::test::Rng;

namespace {

// Product in the idempotent basis, (xi xi', eta eta').
IdempotentCoords idempotent_product(HyperbolicNumber a, HyperbolicNumber b) {
  const auto ca = to_idempotent(a);
  const auto cb = to_idempotent(b);
  return {ca.xi * cb.xi, ca.eta * cb.eta};
}

}  // namespace

TEST_CASE("construction rejects non-finite components") {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HyperbolicNumber(inf, 0.0), NonFiniteValue);
  CHECK_THROWS_AS(HyperbolicNumber(0.0, nan), NonFiniteValue);
  CHECK_NOTHROW(HyperbolicNumber(1e308, -1e308));
  CHECK_THROWS_AS(mul({1e200, 0.0}, {1e200, 0.0}), NonFiniteValue);
}

TEST_CASE("add") {
  CHECK(add({1, 2}, {3, -2}) == HyperbolicNumber{4, 0});
  CHECK(add({0, 0}, {2.5, -7}) == HyperbolicNumber{2.5, -7});
  CHECK(add({1, 1}, {-1, -1}) == HyperbolicNumber{0, 0});
}

TEST_CASE("mul follows h^2 = +1 and the idempotent identities") {
  CHECK(mul(basis::h, basis::h) == basis::one);
  CHECK(mul(basis::n1, basis::n2) == HyperbolicNumber{0, 0});
  CHECK(mul(basis::n1, basis::n1) == basis::n1);
  CHECK(mul(basis::n2, basis::n2) == basis::n2);
  CHECK(add(basis::n1, basis::n2) == basis::one);
  CHECK(sub(basis::n1, basis::n2) == basis::h);
  CHECK(mul({3, 1}, {2, 1}) == HyperbolicNumber{7, 5});
}

TEST_CASE("conjugate") {
  CHECK(conjugate({3, 2}) == HyperbolicNumber{3, -2});
  CHECK(conjugate(basis::n1) == basis::n2);
  CHECK(conjugate(basis::n2) == basis::n1);
  const HyperbolicNumber z{1.5, -0.25};
  CHECK(conjugate(conjugate(z)) == z);

  // Conjugation swaps the idempotent coordinates.
  const auto c = to_idempotent({3, 1});
  const auto cc = to_idempotent(conjugate({3, 1}));
  CHECK(cc.xi == c.eta);
  CHECK(cc.eta == c.xi);
}

TEST_CASE("modulus") {
  CHECK(modulus({1, 0}) == 1.0);
  CHECK(modulus({1, 1}) == 0.0);
  CHECK(modulus({0, 1}) == -1.0);
  CHECK(modulus({3, 1}) == 8.0);
  // z zbar is the real number modulus(z).
  const HyperbolicNumber z{3, 1};
  CHECK(mul(z, conjugate(z)) == HyperbolicNumber{modulus(z), 0});
}

TEST_CASE("idempotent coordinates") {
  CHECK(to_idempotent({3, 1}) == IdempotentCoords{4, 2});
  CHECK(to_idempotent(basis::n1) == IdempotentCoords{1, 0});
  CHECK(to_idempotent(basis::n2) == IdempotentCoords{0, 1});
  CHECK(to_idempotent({-2.5, 0}) == IdempotentCoords{-2.5, -2.5});
  CHECK(from_idempotent({4, 2}) == HyperbolicNumber{3, 1});
  CHECK(from_idempotent({1, 1}) == basis::one);
  CHECK(from_idempotent({1, -1}) == basis::h);
}

TEST_CASE("classify") {
  CHECK(classify({1, 1}) == ElementClass{ElementKind::ZeroDivisor, NullAxis::N1});
  CHECK(classify({1, -1}) == ElementClass{ElementKind::ZeroDivisor, NullAxis::N2});
  CHECK(classify({0, 0}) == ElementClass{ElementKind::Zero, std::nullopt});
  CHECK(classify({2, 1}) == ElementClass{ElementKind::Invertible, std::nullopt});

  SUBCASE("tolerance band is relative to the larger coordinate") {
    // xi = 2e6, eta = 1e-7: 1e-7 <= 1e-12 * 2e6 puts it on the cone.
    const HyperbolicNumber big{1e6 + 5e-8, 1e6 - 5e-8};
    CHECK(classify(big).kind == ElementKind::ZeroDivisor);
    CHECK(classify(big, 0.0).kind == ElementKind::Invertible);
    // Small numbers use an absolute band of tol.
    CHECK(classify({1e-13, 0}).kind == ElementKind::Zero);
    CHECK(classify({1e-13, 0}, 0.0).kind == ElementKind::Invertible);
  }
}

TEST_CASE("divide") {
  // (3 + h) / (2 + h): xi/xi' = 4/3, eta/eta' = 2 -> (5/3, -1/3).
  const HyperbolicNumber q = divide({3, 1}, {2, 1});
  CHECK(q.x() == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(q.y() == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  // Oracle: multiply back with the (x, y) product rule.
  const HyperbolicNumber back{q.x() * 2 + q.y() * 1, q.x() * 1 + q.y() * 2};
  CHECK(close(back, {3, 1}, 1e-15, 3.0));

  CHECK(divide({2, 1}, {2, 1}) == basis::one);

  try {
    divide({1, 0}, {1, 1});
    FAIL("expected DivisionByZeroDivisor");
  } catch (const DivisionByZeroDivisor& e) {
    CHECK(e.axis() == NullAxis::N1);
  }
  try {
    divide({1, 0}, {0, 0});
    FAIL("expected DivisionByZeroDivisor");
  } catch (const DivisionByZeroDivisor& e) {
    CHECK_FALSE(e.axis().has_value());
  }
  // 0/0 on the same axis is refused as well.
  CHECK_THROWS_AS(divide({2, 2}, {1, 1}), DivisionByZeroDivisor);
}

TEST_CASE("inverse") {
  CHECK(inverse({2, 0}) == HyperbolicNumber{0.5, 0});
  CHECK(inverse(basis::h) == basis::h);
  CHECK_THROWS_AS(inverse({1, -1}), DivisionByZeroDivisor);
  const HyperbolicNumber z{3, -1.25};
  CHECK(close(mul(z, inverse(z)), basis::one, 1e-15, 1.0));
}

TEST_CASE("text rendering uses shortest round-trip decimals") {
  CHECK(to_string(HyperbolicNumber{0, 0}) == "0 + 0h");
  CHECK(to_string(HyperbolicNumber{-0.0, -0.0}) == "0 + 0h");
  CHECK(to_string(HyperbolicNumber{3, -2}) == "3 - 2h");
  CHECK(to_string(HyperbolicNumber{0.1, 1e-20}) == "0.1 + 1e-20h");
  CHECK(to_string(IdempotentCoords{4, 2}) == "4·n1 + 2·n2");
  CHECK(to_string(IdempotentCoords{1, -1}) == "1·n1 - 1·n2");
  CHECK(format_real(1.0 / 3.0) == "0.3333333333333333");
  CHECK(to_string(classify({1, 1})) == "ZeroDivisor(n1 axis)");
}

// Properties over seeded random inputs. Errors are measured against the
// magnitude the rounding error scales with (products of |x| + |y|).

TEST_CASE("ring axioms hold on random inputs") {
  Rng rng(20240611);
  for (int k = 0; k < 2000; ++k) {
    const auto a = rng.hyper(10);
    const auto b = rng.hyper(10);
    const auto c = rng.hyper(10);
    const double s2 = norm1(a) * norm1(b);
    const double s3 = s2 * norm1(c);
    CHECK(close(mul(a, b), mul(b, a), 1e-12, s2));
    CHECK(close(mul(mul(a, b), c), mul(a, mul(b, c)), 1e-12, s3));
    CHECK(close(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), 1e-12,
                norm1(a) * (norm1(b) + norm1(c))));
  }
}

TEST_CASE("idempotent product isomorphism and conjugate homomorphism") {
  Rng rng(7);
  for (int k = 0; k < 2000; ++k) {
    const auto a = rng.hyper(100);
    const auto b = rng.hyper(100);
    const auto p = to_idempotent(mul(a, b));
    const auto q = idempotent_product(a, b);
    const double scale = 2 * norm1(a) * norm1(b);
    CHECK(std::abs(p.xi - q.xi) <= 1e-12 * scale);
    CHECK(std::abs(p.eta - q.eta) <= 1e-12 * scale);
    CHECK(close(conjugate(mul(a, b)), mul(conjugate(a), conjugate(b)), 1e-15,
                norm1(a) * norm1(b)));
  }
}

TEST_CASE("modulus is multiplicative") {
  Rng rng(99);
  for (int k = 0; k < 2000; ++k) {
    const auto a = rng.hyper(10);
    const auto b = rng.hyper(10);
    const double lhs = modulus(mul(a, b));
    const double rhs = modulus(a) * modulus(b);
    const double scale = std::pow(norm1(a) * norm1(b), 2);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
  }
}

TEST_CASE("idempotent round trips") {
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const auto z = rng.hyper(1e3);
    CHECK(close(from_idempotent(to_idempotent(z)), z, 0x1p-52, norm1(z)));
    const IdempotentCoords c{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
    const auto back = to_idempotent(from_idempotent(c));
    const double scale = std::abs(c.xi) + std::abs(c.eta);
    CHECK(std::abs(back.xi - c.xi) <= 0x1p-52 * scale);
    CHECK(std::abs(back.eta - c.eta) <= 0x1p-52 * scale);
  }
}

TEST_CASE("divisors of zero on opposite axes multiply to exactly zero") {
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double s = rng.uniform(-50, 50);
    const double t = rng.uniform(-50, 50);
    const HyperbolicNumber on_n1{s, s};   // xi = 2s, eta = 0
    const HyperbolicNumber on_n2{t, -t};  // xi = 0, eta = 2t
    CHECK(mul(on_n1, on_n2) == HyperbolicNumber{0, 0});
    CHECK(classify(mul(on_n1, on_n2)).kind == ElementKind::Zero);
    CHECK_THROWS_AS(inverse(on_n1), DivisionByZeroDivisor);
    CHECK_THROWS_AS(divide({1, 2}, on_n2), DivisionByZeroDivisor);
  }
}

TEST_CASE("division inverts multiplication off the cone") {
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const auto z = rng.hyper(10);
    const auto w = rng.hyper(10);
    if (classify(w).kind != ElementKind::Invertible) {
      CHECK_THROWS_AS(divide(z, w), DivisionByZeroDivisor);
      continue;
    }
    const auto cw = to_idempotent(w);
    const double cond = std::max(std::abs(cw.xi), std::abs(cw.eta)) /
                        std::min(std::abs(cw.xi), std::abs(cw.eta));
    CHECK(close(mul(divide(z, w), w), z, 1e-13 * cond, norm1(z)));
  }
}
