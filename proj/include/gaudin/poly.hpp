#pragma once

// Dense univariate polynomials and quotients of them.
//
// Coefficients are stored ascending and are NOT trimmed automatically: a
// polynomial produced by a cancellation keeps its nominal length with exact
// zeros (CRat) or roundoff dust (Complex) in the top slots.  Degree-sensitive
// code must say which notion it wants (nominal_degree vs degree).

#include <algorithm>
#include <vector>

#include "gaudin/scalar.hpp"

namespace gaudin {

template <class S>
struct Poly {
  std::vector<S> c;  // c[i] is the coefficient of x^i; empty means 0

  Poly() = default;
  explicit Poly(std::vector<S> coeffs) : c(std::move(coeffs)) {}

  static Poly zero() { return Poly(); }
  static Poly constant(const S& v) { return Poly({v}); }
  static Poly x() { return Poly({scalar_traits<S>::zero(), scalar_traits<S>::one()}); }

  // Product of (x - r) over the given roots; monic by construction.
  static Poly from_roots(const std::vector<S>& roots) {
    Poly p = constant(scalar_traits<S>::one());
    for (const S& r : roots) p = p * Poly({-r, scalar_traits<S>::one()});
    return p;
  }

  int nominal_degree() const { return int(c.size()) - 1; }

  // Degree after dropping exactly-zero leading coefficients.
  int degree() const {
    for (int i = int(c.size()) - 1; i >= 0; --i)
      if (!scalar_traits<S>::is_zero(c[i])) return i;
    return -1;
  }

  const S coeff(int i) const {
    if (i < 0 || i >= int(c.size())) return scalar_traits<S>::zero();
    return c[i];
  }

  bool is_zero() const { return degree() < 0; }

  S eval(const S& x) const {
    S acc = scalar_traits<S>::zero();
    for (int i = int(c.size()) - 1; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return zero();
    Poly d;
    d.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * scalar_traits<S>::ratio(long(i), 1);
    return d;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), scalar_traits<S>::zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), scalar_traits<S>::zero());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  friend Poly operator-(Poly a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, scalar_traits<S>::zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (scalar_traits<S>::is_zero(a.c[i])) continue;
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }
  friend Poly operator*(const S& v, Poly a) {
    for (auto& x : a.c) x = v * x;
    return a;
  }
  friend Poly operator*(Poly a, const S& v) { return v * std::move(a); }

  // Multiplication by x^k.
  Poly shifted(int k) const {
    Poly r;
    r.c.assign(c.size() + size_t(k), scalar_traits<S>::zero());
    for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (const S& v : c) m = std::max(m, scalar_traits<S>::abs_est(v));
    return m;
  }

  bool equals_exactly(const Poly& o) const { return (*this - o).is_zero(); }
};

// Quotient num/den.  No gcd reduction is performed: zero testing is done on
// the numerator of the fully cross-multiplied combination, which is exact in
// the rational backend because a true identity cancels to the literal zero
// polynomial.
template <class S>
struct RationalFn {
  Poly<S> num, den;

  RationalFn() : num(), den(Poly<S>::constant(scalar_traits<S>::one())) {}
  RationalFn(Poly<S> n, Poly<S> d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("RationalFn: zero denominator");
  }
  static RationalFn from_poly(Poly<S> p) {
    return RationalFn(std::move(p), Poly<S>::constant(scalar_traits<S>::one()));
  }

  bool is_zero() const { return num.is_zero(); }

  S eval(const S& x) const { return num.eval(x) / den.eval(x); }

  RationalFn derivative() const {
    return RationalFn(num.derivative() * den - num * den.derivative(), den * den);
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RationalFn operator-(RationalFn a) {
    a.num = -a.num;
    return a;
  }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num * b.num, a.den * b.den);
  }
  friend RationalFn operator*(const S& v, RationalFn a) {
    a.num = v * a.num;
    return a;
  }
};

// Truncated reciprocal of a power series given by ascending coefficients
// (a[0] must be nonzero); returns the first (order+1) coefficients.
template <class S>
std::vector<S> series_inverse(const std::vector<S>& a, int order) {
  if (a.empty() || scalar_traits<S>::is_zero(a[0]))
    throw std::domain_error("series_inverse: zero constant term");
  std::vector<S> inv(size_t(order) + 1, scalar_traits<S>::zero());
  inv[0] = scalar_traits<S>::one() / a[0];
  for (int k = 1; k <= order; ++k) {
    S acc = scalar_traits<S>::zero();
    for (int j = 1; j <= k; ++j) {
      if (j < int(a.size())) acc += a[j] * inv[k - j];
    }
    inv[k] = -acc / a[0];
  }
  return inv;
}

// Laurent coefficients of num/den at x = infinity: result[j] is the
// coefficient of x^{-j}, j = 0..order.  Requires nominal deg num <= nominal
// deg den; top coefficients of num may be (exact or numerical) zeros.
template <class S>
std::vector<S> laurent_at_infinity(const Poly<S>& num, const Poly<S>& den, int order) {
  const int nd = num.nominal_degree(), dd = den.nominal_degree();
  if (dd < 0 || scalar_traits<S>::is_zero(den.c[dd]))
    throw std::domain_error("laurent_at_infinity: denominator leading coefficient vanishes");
  if (nd > dd) throw std::domain_error("laurent_at_infinity: numerator degree too large");
  // In v = 1/x:  num/den = v^{dd-nd} * (rev num)(v) / (rev den)(v).
  const int shift = dd - nd;
  std::vector<S> rn(size_t(order) + 1, scalar_traits<S>::zero());
  for (int i = 0; i <= std::min(nd, order); ++i) rn[i] = num.coeff(nd - i);
  std::vector<S> rd(size_t(order) + 1, scalar_traits<S>::zero());
  for (int i = 0; i <= std::min(dd, order); ++i) rd[i] = den.coeff(dd - i);
  std::vector<S> rdinv = series_inverse(rd, order);
  std::vector<S> out(size_t(order) + 1, scalar_traits<S>::zero());
  for (int j = shift; j <= order; ++j) {
    S acc = scalar_traits<S>::zero();
    for (int i = 0; i <= j - shift; ++i) acc += rn[i] * rdinv[j - shift - i];
    out[j] = acc;
  }
  return out;
}

}  // namespace gaudin
