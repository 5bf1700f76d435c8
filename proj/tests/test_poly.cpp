#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaudin/poly.hpp"

using namespace gaudin;

namespace {
Poly<CRat> P(std::initializer_list<long> asc) {
  std::vector<CRat> c;
  for (long v : asc) c.emplace_back(v);
  return Poly<CRat>(c);
}
}  // namespace

TEST_CASE("polynomial arithmetic") {
  Poly<CRat> a = P({1, 2});       // 1 + 2x
  Poly<CRat> b = P({-3, 0, 1});   // x^2 - 3
  CHECK((a * b).equals_exactly(P({-3, -6, 1, 2})));
  CHECK((a + b).equals_exactly(P({-2, 2, 1})));
  CHECK(b.derivative().equals_exactly(P({0, 2})));
  CHECK(b.eval(CRat(2)) == CRat(1));
  CHECK(P({}).is_zero());
  CHECK((a - a).is_zero());
  CHECK((a - a).nominal_degree() == 1);  // no auto trimming
  CHECK((a - a).degree() == -1);
}

TEST_CASE("from_roots builds monic polynomials") {
  Poly<CRat> p = Poly<CRat>::from_roots({CRat(1), CRat(-2), CRat(3)});
  CHECK(p.degree() == 3);
  CHECK(p.coeff(3) == CRat(1));
  CHECK(p.eval(CRat(1)) == CRat(0));
  CHECK(p.eval(CRat(-2)) == CRat(0));
  CHECK(p.eval(CRat(3)) == CRat(0));
  // (x-1)(x+2)(x-3) = x^3 - 2x^2 - 5x + 6
  CHECK(p.equals_exactly(P({6, -5, -2, 1})));
}

TEST_CASE("rational function zero detection through cross multiplication") {
  // 1/(x-1) + 1/(x+1) - 2x/(x^2-1) == 0.
  RationalFn<CRat> f(P({1}), P({-1, 1}));
  RationalFn<CRat> g(P({1}), P({1, 1}));
  RationalFn<CRat> h(P({0, 2}), P({-1, 0, 1}));
  CHECK((f + g - h).is_zero());
  CHECK_FALSE((f + g).is_zero());
  CHECK((f * g).eval(CRat(2)) == CRat(Rational(1, 3)));

  // quotient rule: (1/(x-1))' = -1/(x-1)^2
  RationalFn<CRat> d = f.derivative();
  RationalFn<CRat> expect(P({-1}), P({1, -2, 1}));
  CHECK((d - expect).is_zero());
}

TEST_CASE("series inverse") {
  // 1/(1 - v) = 1 + v + v^2 + ...
  std::vector<CRat> geom{CRat(1), CRat(-1)};
  auto inv = series_inverse(geom, 4);
  for (int k = 0; k <= 4; ++k) CHECK(inv[k] == CRat(1));
  CHECK_THROWS(series_inverse(std::vector<CRat>{CRat(0)}, 2));
}

TEST_CASE("laurent expansion at infinity") {
  // 1/(x - a): coefficients a^{j-1} at x^{-j}.
  CRat a(3);
  auto co = laurent_at_infinity(P({1}), P({-3, 1}), 4);
  CHECK(co[0] == CRat(0));
  CHECK(co[1] == CRat(1));
  CHECK(co[2] == CRat(3));
  CHECK(co[3] == CRat(9));
  CHECK(co[4] == CRat(27));

  // (x^2+1)/(x^2-1) = 1 + 2x^{-2} + 2x^{-4} + ...
  auto even = laurent_at_infinity(P({1, 0, 1}), P({-1, 0, 1}), 4);
  CHECK(even[0] == CRat(1));
  CHECK(even[1] == CRat(0));
  CHECK(even[2] == CRat(2));
  CHECK(even[3] == CRat(0));
  CHECK(even[4] == CRat(2));

  // Numerator with an exactly-zero top coefficient is accepted.
  auto padded = laurent_at_infinity(P({1, 0}), P({-3, 1}), 2);
  CHECK(padded[1] == CRat(1));
  CHECK_THROWS(laurent_at_infinity(P({0, 0, 1}), P({-3, 1}), 2));
}

TEST_CASE("shifted multiplies by a power of x") {
  Poly<CRat> p = P({1, 1});
  CHECK(p.shifted(2).equals_exactly(P({0, 0, 1, 1})));
}
