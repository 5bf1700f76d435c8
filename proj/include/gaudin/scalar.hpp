#pragma once

// Scalar backends.
//
// All operator data in this library lives over one of two interchangeable
// scalar fields:
//   * CRat    -- exact elements of Q(i), built on GMP rationals.  Used for
//                identity checks: every verified identity is homogeneous in
//                the (pi*sqrt(-1)) normalization unit, so it holds exactly
//                over Q(i) whenever the inputs are rational.
//   * Complex -- std::complex<double>, used for root finding and anything
//                that needs eigenvalues or singular values.
//
// Templated code accesses backend services through scalar_traits<S>.

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gaudin {

using Complex = std::complex<double>;
using Rational = mpq_class;

// Exact complex rational a + b*i.
//
// Invariant: components are canonical.  GMP's comparisons and arithmetic
// assume canonical form but the mpq_class(num, den) constructor does not
// establish it, so the constructors taking Rational canonicalize.  (The
// arithmetic operators below preserve canonical form on their own.)
struct CRat {
  Rational re, im;

  CRat() : re(0), im(0) {}
  CRat(int v) : re(v), im(0) {}
  CRat(long v) : re(v), im(0) {}
  CRat(const Rational& r) : re(r), im(0) { re.canonicalize(); }
  CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  CRat conj() const { return CRat(re, -im); }
  Rational norm2() const { return re * re + im * im; }

  Complex to_complex() const { return Complex(re.get_d(), im.get_d()); }

  std::string str() const;
};

inline CRat operator+(const CRat& a, const CRat& b) { return CRat(a.re + b.re, a.im + b.im); }
inline CRat operator-(const CRat& a, const CRat& b) { return CRat(a.re - b.re, a.im - b.im); }
inline CRat operator-(const CRat& a) { return CRat(-a.re, -a.im); }
inline CRat operator*(const CRat& a, const CRat& b) {
  return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline CRat operator/(const CRat& a, const CRat& b) {
  Rational n = b.norm2();
  if (n == 0) throw std::domain_error("CRat: division by zero");
  return CRat((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
}
inline CRat& operator+=(CRat& a, const CRat& b) { a = a + b; return a; }
inline CRat& operator-=(CRat& a, const CRat& b) { a = a - b; return a; }
inline CRat& operator*=(CRat& a, const CRat& b) { a = a * b; return a; }
inline CRat& operator/=(CRat& a, const CRat& b) { a = a / b; return a; }
inline bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

inline std::string CRat::str() const {
  if (im == 0) return re.get_str();
  return re.get_str() + (im > 0 ? "+" : "") + im.get_str() + "i";
}

// Parses "p/q", integer, or decimal ("-1.25") strings into an exact rational.
Rational parse_rational(const std::string& text);

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return Complex(0, 0); }
  static Complex one() { return Complex(1, 0); }
  static Complex i() { return Complex(0, 1); }
  static Complex ratio(long p, long q) { return Complex(double(p) / double(q), 0); }
  static Complex from_rational(const Rational& r) { return Complex(r.get_d(), 0); }
  static bool is_zero(const Complex& v) { return v == Complex(0, 0); }
  static double abs_est(const Complex& v) { return std::abs(v); }
  static Complex conj(const Complex& v) { return std::conj(v); }
  static Complex to_complex(const Complex& v) { return v; }
  static std::string str(const Complex& v) {
    return "(" + std::to_string(v.real()) + "," + std::to_string(v.imag()) + ")";
  }
};

template <>
struct scalar_traits<CRat> {
  static constexpr bool exact = true;
  static CRat zero() { return CRat(); }
  static CRat one() { return CRat(1); }
  static CRat i() { return CRat(Rational(0), Rational(1)); }
  static CRat ratio(long p, long q) { return CRat(Rational(p, q)); }
  static CRat from_rational(const Rational& r) { return CRat(r); }
  static bool is_zero(const CRat& v) { return v.is_zero(); }
  static double abs_est(const CRat& v) { return std::abs(v.to_complex()); }
  static CRat conj(const CRat& v) { return v.conj(); }
  static Complex to_complex(const CRat& v) { return v.to_complex(); }
  static std::string str(const CRat& v) { return v.str(); }
};

// Nearest integer to an exact rational (round half away from zero).
long nearest_integer(const Rational& r);

// True when v is within tol of some integer >= lo (Complex backend) or is
// exactly such an integer (CRat backend).  Used for the assumption gates
// mu not in nu/2 + Z_{>=lo} and mu not in M/2 + Z.
template <class S>
bool is_near_integer_at_least(const S& v, long lo, double tol = 1e-9);

template <>
inline bool is_near_integer_at_least<CRat>(const CRat& v, long lo, double) {
  if (!v.is_real()) return false;
  if (v.re.get_den() != 1) return false;
  return v.re >= lo;
}

template <>
inline bool is_near_integer_at_least<Complex>(const Complex& v, long lo, double tol) {
  if (std::abs(v.imag()) > tol) return false;
  double r = std::round(v.real());
  return std::abs(v.real() - r) <= tol && r >= double(lo) - 0.5;
}

}  // namespace gaudin
