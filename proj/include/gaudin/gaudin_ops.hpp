#pragma once

// Trigonometric Gaudin operators and the second coefficient of the universal
// differential operator as partial-fraction data.
//
// Basis of pole functions: f_s(x) = 1/(1 - x/z_s) and f_s^2.  The product
// closure  f_s f_t = a f_s + b f_t  (s != t, a = z_t/(z_t-z_s),
// b = z_s/(z_s-z_t)) makes {1, f_s, f_s^2} a small exact algebra, which is
// what the column-determinant cross-check expands in.
//
// pi normalization: K_s carries pi_power = 0; D2 data is stored divided by
// (2 pi sqrt(-1))^2 and tagged pi_power = 2.

#include <string>
#include <vector>

#include "gaudin/repn_sl2.hpp"

namespace gaudin {

template <class S>
void require_admissible_poles(const std::vector<S>& z) {
  for (size_t s = 0; s < z.size(); ++s) {
    if (scalar_traits<S>::is_zero(z[s])) throw std::invalid_argument("pole z_s = 0");
    for (size_t t = s + 1; t < z.size(); ++t)
      if (scalar_traits<S>::is_zero(z[s] - z[t]))
        throw std::invalid_argument("coincident poles z_s = z_t");
  }
}

// Full-space matrices of Omega_0, Omega_12, Omega_21 for an ordered site
// pair (s,t).
template <class S>
struct OmegaPair {
  Matrix<S> om0, om12, om21;
};

template <class S>
OmegaPair<S> omega_pair(const TensorSpace& sp, int s, int t) {
  OmegaPair<S> om;
  Matrix<S> e11s = generator_matrix<S>(sp, Gen::e11, s);
  Matrix<S> e22s = generator_matrix<S>(sp, Gen::e22, s);
  Matrix<S> e11t = generator_matrix<S>(sp, Gen::e11, t);
  Matrix<S> e22t = generator_matrix<S>(sp, Gen::e22, t);
  om.om0 = e11s * e11t + e22s * e22t;
  om.om12 = generator_matrix<S>(sp, Gen::e12, s) * generator_matrix<S>(sp, Gen::e21, t);
  om.om21 = generator_matrix<S>(sp, Gen::e21, s) * generator_matrix<S>(sp, Gen::e12, t);
  return om;
}

// r(x) = (Omega_+ x + Omega_-)/(x - 1) acting through sites (s,t).
template <class S>
Matrix<S> r_matrix(const TensorSpace& sp, int s, int t, const S& x) {
  if (scalar_traits<S>::is_zero(x - scalar_traits<S>::one()))
    throw std::invalid_argument("r_matrix: pole at x = 1");
  OmegaPair<S> om = omega_pair<S>(sp, s, t);
  const S half = scalar_traits<S>::ratio(1, 2);
  Matrix<S> plus = om.om0 * half + om.om12;
  Matrix<S> minus = om.om0 * half + om.om21;
  Matrix<S> num = plus * x + minus;
  return num * (scalar_traits<S>::one() / (x - scalar_traits<S>::one()));
}

// K_s(z, mu) on the full space.
template <class S>
Matrix<S> gaudin_operator_full(const TensorSpace& sp, const std::vector<S>& z, const S& mu, int s) {
  if (int(z.size()) != sp.sites()) throw std::invalid_argument("gaudin_operator: |z| != n");
  require_admissible_poles(z);
  const S half = scalar_traits<S>::ratio(1, 2);
  Matrix<S> h_s = generator_matrix<S>(sp, Gen::e11, s) - generator_matrix<S>(sp, Gen::e22, s);
  Matrix<S> k = h_s * (mu * half);
  for (int t = 0; t < sp.sites(); ++t) {
    if (t == s) continue;
    k += r_matrix<S>(sp, s, t, z[s] / z[t]);
  }
  return k;
}

template <class S>
WeightMatrix<S> gaudin_operator(const TensorSpace& sp, const std::vector<S>& z, const S& mu,
                                int s, int nu) {
  WeightMatrix<S> wm;
  wm.nu_in = wm.nu_out = nu;
  wm.mat = restrict_blocks(sp, gaudin_operator_full<S>(sp, z, mu, s), nu, nu);
  return wm;
}

// c0 + sum_s A_s f_s + sum_s B_s f_s^2 with matrix coefficients.
template <class S>
struct PartialFractionOperator {
  std::vector<S> z;
  Matrix<S> c0;
  std::vector<Matrix<S>> A, B;
  int pi_power = 2;

  Matrix<S> eval(const S& x) const {
    Matrix<S> r = c0;
    for (size_t s = 0; s < z.size(); ++s) {
      S f = scalar_traits<S>::one() / (scalar_traits<S>::one() - x / z[s]);
      r += A[s] * f + B[s] * (f * f);
    }
    return r;
  }
};

// D2(x)/(2 pi i)^2 restricted to V[nu]:
//   c0 = -(mu + nu/2)^2/4, A_s = m_s(m_s+2)/4 + K_s, B_s = -m_s(m_s+2)/4.
template <class S>
PartialFractionOperator<S> d2_partial_fractions(const TensorSpace& sp, const std::vector<S>& z,
                                                const S& mu, int nu) {
  require_admissible_poles(z);
  const int d = sp.block_dim(nu);
  PartialFractionOperator<S> pf;
  pf.z = z;
  pf.pi_power = 2;
  S half_nu = scalar_traits<S>::ratio(nu, 2);
  S c0 = -(mu + half_nu) * (mu + half_nu) * scalar_traits<S>::ratio(1, 4);
  pf.c0 = Matrix<S>::identity(d) * c0;
  for (int s = 0; s < sp.sites(); ++s) {
    const int m = sp.ms()[s];
    S cas = scalar_traits<S>::ratio(m * (m + 2), 4);
    pf.A.push_back(Matrix<S>::identity(d) * cas + gaudin_operator<S>(sp, z, mu, s, nu).mat);
    pf.B.push_back(Matrix<S>::identity(d) * (-cas));
  }
  return pf;
}

// x^{-j} Laurent coefficient of stored partial-fraction data, from
//   f_s = -sum_{r>=1} z_s^r x^{-r},    f_s^2 = sum_{r>=2} (r-1) z_s^r x^{-r}.
template <class S>
Matrix<S> pf_laurent_coeff(const PartialFractionOperator<S>& pf, int j) {
  if (j < 0) throw std::invalid_argument("pf_laurent_coeff: negative order");
  if (j == 0) return pf.c0;
  Matrix<S> out(pf.c0.rows(), pf.c0.cols());
  for (size_t s = 0; s < pf.z.size(); ++s) {
    S zj = scalar_traits<S>::one();
    for (int r = 0; r < j; ++r) zj *= pf.z[s];
    out += pf.A[s] * (-zj);
    if (j >= 2) out += pf.B[s] * (zj * scalar_traits<S>::ratio(j - 1, 1));
  }
  return out;
}

// First-row Laurent generators: F_11 = 1 - M, F_1j = -sum_s m_s z_s^{j-1}.
// (With all m_s = 1 this is the usual 1-n, -sum z_s^{j-1}.)
template <class S>
S f1_laurent(const std::vector<S>& z, const std::vector<int>& ms, int j) {
  if (j < 1) throw std::invalid_argument("f1_laurent: order must be >= 1");
  if (j == 1) {
    int M = 0;
    for (int m : ms) M += m;
    return scalar_traits<S>::ratio(1 - M, 1);
  }
  S acc = scalar_traits<S>::zero();
  for (size_t s = 0; s < z.size(); ++s) {
    S p = scalar_traits<S>::one();
    for (int r = 0; r < j - 1; ++r) p *= z[s];
    acc -= scalar_traits<S>::ratio(ms[s], 1) * p;
  }
  return acc;
}

// --- Column-determinant cross-check --------------------------------------
//
// The universal operator is the column determinant of a 2x2 matrix with
// entries that are first-order in the f_s.  Divided by 2 pi i, the entries
// are
//   m11 = sum_s e11^(s) f_s - e11/2     m12 = sum_s e21^(s) f_s - e21
//   m21 = sum_s e12^(s) f_s             m22 = sum_s e22^(s) f_s - e22/2
// (bare symbols are diagonal actions) and with d := del_u/(2 pi i), which
// acts on coefficients by d f_s = f_s - f_s^2,
//   D1/(2 pi i)  = m11 + m22
//   D2/(2 pi i)^2 = d(m22) + (-mu/2 + m11)(mu/2 + m22) - m21 m12.
// Everything stays inside the exact f_s algebra, so the comparison against
// the closed partial-fraction form is coefficientwise and exact.

template <class S>
struct FirstOrderPF {  // c + sum_s a_s f_s
  Matrix<S> c;
  std::vector<Matrix<S>> a;
};

template <class S>
PartialFractionOperator<S> pf_multiply(const FirstOrderPF<S>& u, const FirstOrderPF<S>& v,
                                       const std::vector<S>& z) {
  const int n = int(z.size());
  PartialFractionOperator<S> out;
  out.z = z;
  out.pi_power = 0;
  out.c0 = u.c * v.c;
  const int d = out.c0.rows();
  out.A.assign(n, Matrix<S>(d, d));
  out.B.assign(n, Matrix<S>(d, d));
  for (int s = 0; s < n; ++s) {
    out.A[s] += u.c * v.a[s] + u.a[s] * v.c;
    out.B[s] += u.a[s] * v.a[s];
    for (int t = 0; t < n; ++t) {
      if (t == s) continue;
      // f_s f_t = a f_s + b f_t with a = z_t/(z_t - z_s), b = z_s/(z_s - z_t);
      // collect only the f_s share here, the f_t share lands in iteration t.
      S a = z[t] / (z[t] - z[s]);
      out.A[s] += (u.a[s] * v.a[t] + u.a[t] * v.a[s]) * a;
    }
  }
  return out;
}

struct CdetReport {
  bool d1_is_zero = false;
  bool d2_matches = false;
  std::string mismatch;  // which pole coefficient disagreed, empty if none
};

template <class S>
CdetReport cdet_cross_check(const TensorSpace& sp, const std::vector<S>& z, const S& mu) {
  require_admissible_poles(z);
  const int n = sp.sites();
  const int dim = sp.dim();
  const S half = scalar_traits<S>::ratio(1, 2);

  auto entry = [&](Gen site_gen, Gen bare_gen, const S& bare_weight) {
    FirstOrderPF<S> e;
    e.c = generator_matrix<S>(sp, bare_gen, kDiagonal) * (-bare_weight);
    for (int s = 0; s < n; ++s) e.a.push_back(generator_matrix<S>(sp, site_gen, s));
    return e;
  };
  FirstOrderPF<S> m11 = entry(Gen::e11, Gen::e11, half);
  FirstOrderPF<S> m12 = entry(Gen::e21, Gen::e21, scalar_traits<S>::one());
  FirstOrderPF<S> m21 = entry(Gen::e12, Gen::e12, scalar_traits<S>::zero());
  FirstOrderPF<S> m22 = entry(Gen::e22, Gen::e22, half);

  CdetReport rep;

  // D1 = m11 + m22 must vanish identically (central element acts by zero).
  {
    Matrix<S> c = m11.c + m22.c;
    bool zero = c.is_zero();
    for (int s = 0; s < n; ++s) zero = zero && (m11.a[s] + m22.a[s]).is_zero();
    rep.d1_is_zero = zero;
  }

  // D2 via the determinant expansion.
  FirstOrderPF<S> left = m11, right = m22;
  left.c -= Matrix<S>::identity(dim) * (mu * half);
  right.c += Matrix<S>::identity(dim) * (mu * half);
  PartialFractionOperator<S> d2 = pf_multiply(left, right, z);
  PartialFractionOperator<S> cross = pf_multiply(m21, m12, z);
  d2.c0 -= cross.c0;
  for (int s = 0; s < n; ++s) {
    d2.A[s] -= cross.A[s];
    d2.B[s] -= cross.B[s];
    // d(m22): derivative of the coefficient function, f_s -> f_s - f_s^2.
    d2.A[s] += m22.a[s];
    d2.B[s] -= m22.a[s];
  }

  // Closed form: -(mu^2 + mu(e11-e22) - e11 e22)/4 + sum_s [(m_s(m_s+2)/4 + K_s) f_s
  //              - m_s(m_s+2)/4 f_s^2] on the full space.
  Matrix<S> e11 = generator_matrix<S>(sp, Gen::e11, kDiagonal);
  Matrix<S> e22 = generator_matrix<S>(sp, Gen::e22, kDiagonal);
  Matrix<S> c0_ref = (Matrix<S>::identity(dim) * (mu * mu) + (e11 - e22) * mu - e11 * e22) *
                     scalar_traits<S>::ratio(-1, 4);
  rep.d2_matches = true;
  if (!(d2.c0 == c0_ref)) {
    rep.d2_matches = false;
    rep.mismatch = "constant term";
  }
  for (int s = 0; s < n && rep.d2_matches; ++s) {
    const int m = sp.ms()[s];
    S cas = scalar_traits<S>::ratio(m * (m + 2), 4);
    Matrix<S> a_ref = Matrix<S>::identity(dim) * cas + gaudin_operator_full<S>(sp, z, mu, s);
    Matrix<S> b_ref = Matrix<S>::identity(dim) * (-cas);
    if (!(d2.A[s] == a_ref)) {
      rep.d2_matches = false;
      rep.mismatch = "f coefficient at pole " + std::to_string(s + 1);
    } else if (!(d2.B[s] == b_ref)) {
      rep.d2_matches = false;
      rep.mismatch = "f^2 coefficient at pole " + std::to_string(s + 1);
    }
  }
  return rep;
}

// A(mu + nu/2 - 1) K_s(z, mu) = K_s(z, -mu) A(mu + nu/2 - 1) on V[nu].
struct IntertwinerReport {
  bool exact = true;
  double max_defect = 0;
};

template <class S>
IntertwinerReport intertwiner_check(const TensorSpace& sp, const std::vector<S>& z,
                                    const S& mu, int nu) {
  const S shifted = mu + scalar_traits<S>::ratio(nu, 2) - scalar_traits<S>::one();
  WeightMatrix<S> a = dynamical_weyl_A<S>(sp, shifted, nu);
  IntertwinerReport rep;
  for (int s = 0; s < sp.sites(); ++s) {
    Matrix<S> lhs = a.mat * gaudin_operator<S>(sp, z, mu, s, nu).mat;
    Matrix<S> rhs = gaudin_operator<S>(sp, z, -mu, s, -nu).mat * a.mat;
    Matrix<S> diff = lhs - rhs;
    rep.exact = rep.exact && diff.is_zero();
    rep.max_defect = std::max(rep.max_defect, diff.max_abs());
  }
  return rep;
}

}  // namespace gaudin
