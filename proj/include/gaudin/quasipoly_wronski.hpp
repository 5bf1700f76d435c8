#pragma once

// Pairs of quasi-polynomials p = x^{-zeta} P(x), q = x^{zeta} Q(x) with monic
// polynomial parts, their Wronskians, dual polynomials, and the second-order
// operators attached to them.
//
// Exponents stay symbolic throughout: nothing ever evaluates x^zeta.  Every
// operator application goes through the rule x (x^a f)' = x^a (a f + x f'),
// so all computations reduce to polynomial arithmetic over the scalar type.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaudin/gaudin_ops.hpp"
#include "gaudin/matrix.hpp"
#include "gaudin/poly.hpp"

namespace gaudin {

// Exponent gate: 2*zeta must not be an integer, else x^{-zeta} P and
// x^{zeta} Q can collide and the Wronskian prefactor 2 zeta + l - m vanish.
template <class S>
bool is_half_integer(const S& v, double tol = 1e-9) {
  return is_near_integer_at_least<S>(v + v, -(1L << 40), tol);
}

template <class S>
struct QuasiPolyPair {
  S zeta;
  Poly<S> p, q;  // monic parts; the pair stands for x^{-zeta} p, x^{zeta} q
  int m = 0, ell = 0;
};

template <class S>
void require_monic(const Poly<S>& p, const char* what) {
  const int d = p.degree();
  if (d < 0 || scalar_traits<S>::abs_est(p.coeff(d) - scalar_traits<S>::one()) > 1e-9)
    throw std::invalid_argument(std::string(what) + ": polynomial part must be monic");
}

template <class S>
QuasiPolyPair<S> make_quasi_pair(const S& zeta, Poly<S> p, Poly<S> q) {
  if (is_half_integer(zeta)) throw std::domain_error("quasi pair: exponent lies in (1/2)Z");
  require_monic(p, "quasi pair");
  require_monic(q, "quasi pair");
  QuasiPolyPair<S> u;
  u.zeta = zeta;
  u.m = p.degree();
  u.ell = q.degree();
  u.p = std::move(p);
  u.q = std::move(q);
  return u;
}

template <class S>
QuasiPolyPair<S> transpose_pair(const QuasiPolyPair<S>& u) {
  QuasiPolyPair<S> t;
  t.zeta = -u.zeta;
  t.p = u.q;
  t.q = u.p;
  t.m = u.ell;
  t.ell = u.m;
  return t;
}

// Wr_x(p, q) = (2 zeta + l - m)/x * W(x) with W monic of degree n = m + l;
// sigma[s-1] = (-1)^s * coeff(W, n - s).
template <class S>
struct WronskiImage {
  Poly<S> w;
  std::vector<S> sigma;
};

template <class S>
WronskiImage<S> wronskian_pair(const QuasiPolyPair<S>& u) {
  const S two_zeta = u.zeta + u.zeta;
  const S c = two_zeta + scalar_traits<S>::ratio(u.ell - u.m, 1);
  // x (P Q' - P' Q) + 2 zeta P Q, exactly divisible by nothing: divide by c.
  Poly<S> num = (u.p * u.q.derivative() - u.p.derivative() * u.q).shifted(1) + two_zeta * (u.p * u.q);
  WronskiImage<S> out;
  const S cinv = scalar_traits<S>::one() / c;
  out.w = cinv * num;
  const int n = u.m + u.ell;
  out.sigma.resize(size_t(n));
  S sign = -scalar_traits<S>::one();
  for (int s = 1; s <= n; ++s) {
    out.sigma[size_t(s - 1)] = sign * out.w.coeff(n - s);
    sign = -sign;
  }
  return out;
}

// Monic second-order operator d^2 + G1 d + G2 with kernel spanned by the two
// quasi-polynomials.  G1 = -Wr'/Wr and G2 = Wr_x(p', q')/Wr_x(p, q); with
// Wr = c W / x both reduce to polynomial data:
//   G1 = (W - x W')/(x W),      G2 = N/(c x^2 W),
//   N = (x P' - z P)(x^2 Q'' + 2 z x Q' + z(z-1) Q)
//     - (x^2 P'' - 2 z x P' + z(z+1) P)(x Q' + z Q),   z = zeta.
template <class S>
struct KernelOperator {
  S zeta, c;     // c = 2 zeta + l - m
  Poly<S> w;     // monic Wronskian polynomial, degree n
  Poly<S> n2;    // numerator polynomial N of G2
  RationalFn<S> g1, g2;
};

template <class S>
KernelOperator<S> kernel_operator(const QuasiPolyPair<S>& u) {
  const S z = u.zeta;
  const S two_z = z + z;
  const S one = scalar_traits<S>::one();
  KernelOperator<S> op;
  op.zeta = z;
  op.c = two_z + scalar_traits<S>::ratio(u.ell - u.m, 1);
  op.w = wronskian_pair(u).w;

  const Poly<S>&P = u.p, &Q = u.q;
  Poly<S> lo_p = P.derivative().shifted(1) - z * P;                       // x P' - z P
  Poly<S> hi_p = P.derivative().derivative().shifted(2) - two_z * P.derivative().shifted(1) +
                 (z * (z + one)) * P;                                     // x^2 P'' - 2z x P' + z(z+1) P
  Poly<S> lo_q = Q.derivative().shifted(1) + z * Q;                       // x Q' + z Q
  Poly<S> hi_q = Q.derivative().derivative().shifted(2) + two_z * Q.derivative().shifted(1) +
                 (z * (z - one)) * Q;                                     // x^2 Q'' + 2z x Q' + z(z-1) Q
  op.n2 = lo_p * hi_q - hi_p * lo_q;

  op.g1 = RationalFn<S>(op.w - op.w.derivative().shifted(1), op.w.shifted(1));
  op.g2 = RationalFn<S>(op.n2, op.w.shifted(2) * op.c);
  return op;
}

// Image of x^alpha f under d^2 + c1 d + c2, divided by x^{alpha-2}:
//   x^2 f'' + 2 alpha x f' + alpha(alpha-1) f
//   + c1 * x (x f' + alpha f) + c2 * x^2 f.
// Zero result <=> x^alpha f lies in the kernel.
template <class S>
RationalFn<S> quasimonomial_image(const RationalFn<S>& c1, const RationalFn<S>& c2, const S& alpha,
                                  const Poly<S>& f) {
  const S one = scalar_traits<S>::one();
  Poly<S> df = f.derivative();
  Poly<S> t0 = df.derivative().shifted(2) + (alpha + alpha) * df.shifted(1) + (alpha * (alpha - one)) * f;
  Poly<S> euler = df.shifted(1) + alpha * f;  // x f' + alpha f
  RationalFn<S> out = RationalFn<S>::from_poly(t0);
  out = out + c1 * RationalFn<S>::from_poly(euler.shifted(1));
  out = out + c2 * RationalFn<S>::from_poly(f.shifted(2));
  return out;
}

template <class S>
RationalFn<S> kernel_apply(const KernelOperator<S>& op, const S& alpha, const Poly<S>& f) {
  return quasimonomial_image(op.g1, op.g2, alpha, f);
}

// x^{-j} coefficient at infinity of G_i, i in {1, 2}.  Defined for j >= i.
template <class S>
S g_laurent_coeffs(const KernelOperator<S>& op, int i, int j) {
  if (i != 1 && i != 2) throw std::invalid_argument("g_laurent_coeffs: i must be 1 or 2");
  if (j < i) throw std::invalid_argument("g_laurent_coeffs: requires j >= i");
  if (i == 1)
    return laurent_at_infinity(op.w - op.w.derivative().shifted(1), op.w.shifted(1), j)[size_t(j)];
  return laurent_at_infinity(op.n2, op.w.shifted(2) * op.c, j)[size_t(j)];
}

// Canonical partial-fraction data of a scalar second-order coefficient
//   F2 = cx1/x + cx2/x^2 + sum_s cz1[s]/(x - b_s)
// over the pole set {0, b_1, ..., b_n}.  Double poles at b_s are absent.
template <class S>
struct ScalarSecondOrder {
  S cx1, cx2;
  std::vector<S> cz1;
};

// Residue extraction for G2 = N/(c x^2 W) at 0 and at the (simple, nonzero)
// roots b of W.
template <class S>
ScalarSecondOrder<S> kernel_canonical_coeffs(const KernelOperator<S>& op, const std::vector<S>& b) {
  const Poly<S>&N = op.n2, &W = op.w;
  Poly<S> dN = N.derivative(), dW = W.derivative();
  const S w0 = W.eval(scalar_traits<S>::zero());
  if (scalar_traits<S>::is_zero(w0))
    throw std::domain_error("kernel_canonical_coeffs: Wronskian vanishes at 0");
  const S n0 = N.eval(scalar_traits<S>::zero());
  ScalarSecondOrder<S> out;
  out.cx2 = n0 / (op.c * w0);
  out.cx1 = (dN.eval(scalar_traits<S>::zero()) * w0 - n0 * dW.eval(scalar_traits<S>::zero())) /
            (op.c * w0 * w0);
  for (const S& r : b) {
    S slope = dW.eval(r);
    if (scalar_traits<S>::is_zero(slope))
      throw std::domain_error("kernel_canonical_coeffs: repeated Wronskian root");
    out.cz1.push_back(N.eval(r) / (r * r * op.c * slope));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dual polynomial.

template <class S>
struct DualPolyResult {
  Poly<S> ytilde;   // monic of degree M - m
  S constant;       // mu + nu/2, forced by the top coefficient
  double residual;  // consistency defect of the overdetermined system
  bool unique;
};

// The unique monic ytilde of degree M - m with
//   Wr_x(y, x^{mu - nu/2} ytilde) = (mu + nu/2) x^{mu - nu/2 - 1} prod (x - z_s)^{m_s},
// found by matching coefficients of x^k, k = 0..M-1 (the k = M equation is
// the top-coefficient identity and holds automatically).  Requires
// mu - nu/2 not in Z_{>=0}; nu = M - 2m is derived from deg y.
template <class S>
DualPolyResult<S> dual_polynomial(const Poly<S>& y, const std::vector<S>& z,
                                  const std::vector<int>& ms, const S& mu) {
  require_monic(y, "dual_polynomial");
  if (z.size() != ms.size()) throw std::invalid_argument("dual_polynomial: |z| != |ms|");
  const int m = y.degree();
  int M = 0;
  for (int v : ms) M += v;
  const int mt = M - m;
  if (mt < 0) throw std::invalid_argument("dual_polynomial: deg y exceeds total weight");
  const int nu = M - 2 * m;
  const S kappa = mu - scalar_traits<S>::ratio(nu, 2);
  if (is_near_integer_at_least(kappa, 0))
    throw std::domain_error("dual_polynomial: requires mu not in nu/2 + Z_{>=0}");
  const S c0 = mu + scalar_traits<S>::ratio(nu, 2);

  Poly<S> zpoly = Poly<S>::constant(scalar_traits<S>::one());
  for (size_t s = 0; s < z.size(); ++s) {
    Poly<S> lin({-z[s], scalar_traits<S>::one()});
    for (int r = 0; r < ms[s]; ++r) zpoly = zpoly * lin;
  }

  // Row k:  sum_{j} y_{k-j} (kappa + 2j - k) yt_j = c0 Z_k,  yt_mt = 1 known.
  auto term = [&](int k, int j) { return y.coeff(k - j) * (kappa + scalar_traits<S>::ratio(2 * j - k, 1)); };
  DualPolyResult<S> out;
  out.constant = c0;
  if (mt == 0) {
    double resid = 0;
    for (int k = 0; k < M; ++k)
      resid = std::max(resid, scalar_traits<S>::abs_est(c0 * zpoly.coeff(k) - term(k, 0)));
    out.ytilde = Poly<S>::constant(scalar_traits<S>::one());
    out.residual = resid;
    out.unique = true;
    return out;
  }
  Matrix<S> a(M, mt);
  std::vector<S> rhs(size_t(M), scalar_traits<S>::zero());
  for (int k = 0; k < M; ++k) {
    rhs[size_t(k)] = c0 * zpoly.coeff(k);
    for (int j = std::max(0, k - m); j <= std::min(mt, k); ++j) {
      if (j == mt)
        rhs[size_t(k)] -= term(k, j);
      else
        a(k, j) = term(k, j);
    }
  }
  SolveOutcome<S> sol = solve_consistent(std::move(a), std::move(rhs));
  std::vector<S> coeffs = std::move(sol.x);
  coeffs.push_back(scalar_traits<S>::one());
  out.ytilde = Poly<S>(std::move(coeffs));
  out.residual = sol.residual;
  out.unique = sol.unique;
  return out;
}

// Max-abs coefficient of  [x (y yt' - y' yt) + kappa y yt] - c0 prod (x-z_s)^{m_s},
// the polynomial form of the defining identity above.
template <class S>
double dual_identity_residual(const Poly<S>& y, const Poly<S>& yt, const std::vector<S>& z,
                              const std::vector<int>& ms, const S& mu) {
  int M = 0;
  for (int v : ms) M += v;
  const int nu = M - 2 * y.degree();
  const S kappa = mu - scalar_traits<S>::ratio(nu, 2);
  const S c0 = mu + scalar_traits<S>::ratio(nu, 2);
  Poly<S> zpoly = Poly<S>::constant(scalar_traits<S>::one());
  for (size_t s = 0; s < z.size(); ++s) {
    Poly<S> lin({-z[s], scalar_traits<S>::one()});
    for (int r = 0; r < ms[s]; ++r) zpoly = zpoly * lin;
  }
  Poly<S> lhs = (y * yt.derivative() - y.derivative() * yt).shifted(1) + kappa * (y * yt);
  return (lhs - c0 * zpoly).max_abs();
}

// ---------------------------------------------------------------------------
// Conjugation of a stored partial-fraction operator.
//
// For E = (2 pi i)^2 [ (x d/dx)^2 + pf(x) ] with pf = c0 + sum A_s f_s + B_s f_s^2,
// f_s = 1/(1 - x/z_s), and Phi = prod (x - z_s)^{-m_s/2}, the conjugate
// (2 pi i x)^{-2} Phi^{-1} E Phi = d^2 + F1 d + F2 has
//   F1 = 1/x - sum_s m_s/(x - z_s)
// and F2 with only simple poles at the z_s (the double poles cancel because
// B_s = -m_s(m_s+2)/4):
//   F2 = cx1/x + cx2/x^2 + sum_s cz1[s]/(x - z_s),
//   cx2    = c0 + sum_s (A_s + B_s)
//   cx1    = sum_s (m_s/2 + A_s + 2 B_s)/z_s
//   cz1[s] = -(m_s/2)/z_s - (A_s + 2 B_s)/z_s + sum_{p != s} (m_s m_p/2)/(z_s - z_p).
template <class S>
struct ConjugatedOperator {
  std::vector<S> z;
  std::vector<int> ms;
  Matrix<S> cx1, cx2;
  std::vector<Matrix<S>> cz1;
};

template <class S>
ConjugatedOperator<S> conjugated_operator(const PartialFractionOperator<S>& pf,
                                          const std::vector<int>& ms) {
  const size_t n = pf.z.size();
  if (ms.size() != n) throw std::invalid_argument("conjugated_operator: |ms| != |z|");
  const int d = pf.c0.rows();
  const Matrix<S> id = Matrix<S>::identity(d);
  const S one = scalar_traits<S>::one();
  for (size_t s = 0; s < n; ++s) {
    S cas = scalar_traits<S>::ratio(ms[s] * (ms[s] + 2), 4);
    Matrix<S> defect = pf.B[s] + id * cas;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        if (scalar_traits<S>::abs_est(defect(r, c)) > 1e-9 * (1 + scalar_traits<S>::abs_est(cas)))
          throw std::invalid_argument("conjugated_operator: B_s != -m_s(m_s+2)/4");
  }
  ConjugatedOperator<S> out;
  out.z = pf.z;
  out.ms = ms;
  out.cx1 = Matrix<S>(d, d);
  out.cx2 = pf.c0;
  for (size_t s = 0; s < n; ++s) {
    const S zinv = one / pf.z[s];
    const S half_m = scalar_traits<S>::ratio(ms[s], 2);
    Matrix<S> a2b = pf.A[s] + pf.B[s] + pf.B[s];  // A_s + 2 B_s
    out.cx2 += pf.A[s] + pf.B[s];
    out.cx1 += (a2b + id * half_m) * zinv;
    Matrix<S> c = (a2b + id * half_m) * (-zinv);
    for (size_t p = 0; p < n; ++p) {
      if (p == s) continue;
      c += id * (scalar_traits<S>::ratio(ms[s] * ms[p], 2) / (pf.z[s] - pf.z[p]));
    }
    out.cz1.push_back(std::move(c));
  }
  return out;
}

// x^{-j} coefficient of F2 at infinity; zero for j < 2 (the j = 1 terms of
// the canonical pieces cancel).  Defined for j >= 1.
template <class S>
Matrix<S> f2_laurent(const ConjugatedOperator<S>& op, int j) {
  if (j < 1) throw std::invalid_argument("f2_laurent: order must be >= 1");
  const int d = op.cx2.rows();
  Matrix<S> out(d, d);
  if (j == 1) out += op.cx1;
  if (j == 2) out += op.cx2;
  for (size_t s = 0; s < op.z.size(); ++s) {
    S p = scalar_traits<S>::one();
    for (int r = 0; r < j - 1; ++r) p *= op.z[s];
    out += op.cz1[s] * p;
  }
  return out;
}

template <class S>
ScalarSecondOrder<S> scalar_coeffs(const ConjugatedOperator<S>& op) {
  if (op.cx2.rows() != 1 || op.cx2.cols() != 1)
    throw std::invalid_argument("scalar_coeffs: blocks are not 1x1");
  ScalarSecondOrder<S> out;
  out.cx1 = op.cx1(0, 0);
  out.cx2 = op.cx2(0, 0);
  for (const auto& c : op.cz1) out.cz1.push_back(c(0, 0));
  return out;
}

// F1 = 1/x - sum_s m_s/(x - z_s) as an explicit quotient.
template <class S>
RationalFn<S> f1_rational(const std::vector<S>& z, const std::vector<int>& ms) {
  Poly<S> full = Poly<S>::constant(scalar_traits<S>::one());
  for (const S& zs : z) full = full * Poly<S>({-zs, scalar_traits<S>::one()});
  Poly<S> num = full;
  for (size_t s = 0; s < z.size(); ++s) {
    Poly<S> rest = Poly<S>::constant(scalar_traits<S>::ratio(ms[s], 1));
    for (size_t p = 0; p < z.size(); ++p)
      if (p != s) rest = rest * Poly<S>({-z[p], scalar_traits<S>::one()});
    num = num - rest.shifted(1);
  }
  return RationalFn<S>(num, full.shifted(1));
}

template <class S>
RationalFn<S> f2_rational(const ConjugatedOperator<S>& op) {
  ScalarSecondOrder<S> c = scalar_coeffs(op);
  Poly<S> full = Poly<S>::constant(scalar_traits<S>::one());
  for (const S& zs : op.z) full = full * Poly<S>({-zs, scalar_traits<S>::one()});
  Poly<S> num = c.cx1 * full.shifted(1) + c.cx2 * full;
  for (size_t s = 0; s < op.z.size(); ++s) {
    Poly<S> rest = Poly<S>::constant(c.cz1[s]);
    for (size_t p = 0; p < op.z.size(); ++p)
      if (p != s) rest = rest * Poly<S>({-op.z[p], scalar_traits<S>::one()});
    num = num + rest.shifted(2);
  }
  return RationalFn<S>(num, full.shifted(2));
}

// Coefficients up to maxdeg of prod_{i<=m} (1-a^i)^{-1} * prod_{j<=l} (1-a^j)^{-1}.
inline std::vector<long long> graded_character(int m, int ell, int maxdeg) {
  if (maxdeg < 0) throw std::invalid_argument("graded_character: negative degree");
  std::vector<long long> c(size_t(maxdeg) + 1, 0);
  c[0] = 1;
  auto fold = [&](int stride) {
    for (int k = stride; k <= maxdeg; ++k) c[size_t(k)] += c[size_t(k - stride)];
  };
  for (int i = 1; i <= m; ++i) fold(i);
  for (int j = 1; j <= ell; ++j) fold(j);
  return c;
}

}  // namespace gaudin
