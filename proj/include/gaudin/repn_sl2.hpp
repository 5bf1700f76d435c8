#pragma once

// sl2 irreducibles, tensor products, weight blocks, the Weyl involution and
// its dynamical deformation A(mu).
//
// Conventions, used by every module that exchanges matrices:
//  * V_m has basis v_0..v_m with
//      (e11-e22) v_k = (m-2k) v_k,   e21 v_k = (k+1) v_{k+1},
//      e12 v_k = (m-k+1) v_{k-1},    e11+e22 = 0.
//  * Tensor basis vectors are index tuples (k_1..k_n), 0 <= k_s <= m_s,
//    ordered lexicographically (k_1 most significant); the weight of a tuple
//    is nu = sum(m_s - 2 k_s) and each weight block inherits the order.

#include <map>
#include <string>
#include <vector>

#include "gaudin/matrix.hpp"

namespace gaudin {

enum class Gen { e11, e12, e21, e22 };

// Site index value meaning "sum over all sites".
inline constexpr int kDiagonal = -1;

template <class S>
struct IrrepData {
  int m = 0;
  int dim = 1;
  Matrix<S> e11, e12, e21, e22;
};

template <class S>
IrrepData<S> build_irrep(int m) {
  if (m < 0) throw std::invalid_argument("build_irrep: negative highest weight");
  IrrepData<S> rep;
  rep.m = m;
  rep.dim = m + 1;
  rep.e11 = Matrix<S>(m + 1, m + 1);
  rep.e22 = Matrix<S>(m + 1, m + 1);
  rep.e12 = Matrix<S>(m + 1, m + 1);
  rep.e21 = Matrix<S>(m + 1, m + 1);
  for (int k = 0; k <= m; ++k) {
    rep.e11(k, k) = scalar_traits<S>::ratio(m - 2 * k, 2);
    rep.e22(k, k) = scalar_traits<S>::ratio(-(m - 2 * k), 2);
    if (k + 1 <= m) rep.e21(k + 1, k) = scalar_traits<S>::ratio(k + 1, 1);
    if (k - 1 >= 0) rep.e12(k - 1, k) = scalar_traits<S>::ratio(m - k + 1, 1);
  }
  return rep;
}

class TensorSpace {
 public:
  explicit TensorSpace(std::vector<int> ms);

  const std::vector<int>& ms() const { return ms_; }
  int sites() const { return int(ms_.size()); }
  int total_weight() const { return M_; }  // M = sum m_s
  int dim() const { return dim_; }

  const std::vector<int>& tuple(int index) const { return tuples_[index]; }
  int index_of(const std::vector<int>& tuple) const;
  int weight_of(int index) const;

  bool has_block(int nu) const;
  // Full-space indices of the weight-nu basis, in lexicographic order.
  const std::vector<int>& block(int nu) const;
  int block_dim(int nu) const { return int(block(nu).size()); }
  std::vector<int> weights() const;

 private:
  std::vector<int> ms_;
  int M_ = 0;
  int dim_ = 1;
  std::vector<std::vector<int>> tuples_;
  std::map<int, std::vector<int>> blocks_;
};

// A matrix mapping the weight block V[nu_in] to V[nu_out], with the power of
// (pi*sqrt(-1)) factored out into pi_power.
template <class S>
struct WeightMatrix {
  int nu_in = 0, nu_out = 0;
  int pi_power = 0;
  Matrix<S> mat;
};

namespace detail {

template <class S>
void add_site_action(const TensorSpace& sp, Gen g, int s, Matrix<S>& out) {
  const int m = sp.ms()[s];
  for (int col = 0; col < sp.dim(); ++col) {
    std::vector<int> t = sp.tuple(col);
    const int k = t[s];
    switch (g) {
      case Gen::e11:
        out(col, col) += scalar_traits<S>::ratio(m - 2 * k, 2);
        break;
      case Gen::e22:
        out(col, col) += scalar_traits<S>::ratio(-(m - 2 * k), 2);
        break;
      case Gen::e21:
        if (k + 1 <= m) {
          t[s] = k + 1;
          out(sp.index_of(t), col) += scalar_traits<S>::ratio(k + 1, 1);
        }
        break;
      case Gen::e12:
        if (k - 1 >= 0) {
          t[s] = k - 1;
          out(sp.index_of(t), col) += scalar_traits<S>::ratio(m - k + 1, 1);
        }
        break;
    }
  }
}

}  // namespace detail

// Full-space matrix of g^{(s)}, or of the diagonal action sum_s g^{(s)}.
template <class S>
Matrix<S> generator_matrix(const TensorSpace& sp, Gen g, int site) {
  Matrix<S> out(sp.dim(), sp.dim());
  if (site == kDiagonal) {
    for (int s = 0; s < sp.sites(); ++s) detail::add_site_action(sp, g, s, out);
  } else {
    if (site < 0 || site >= sp.sites()) throw std::invalid_argument("generator_matrix: bad site");
    detail::add_site_action(sp, g, site, out);
  }
  return out;
}

// Weight shift of a generator: e21 lowers nu by 2, e12 raises it by 2.
inline int generator_weight_shift(Gen g) {
  switch (g) {
    case Gen::e12: return 2;
    case Gen::e21: return -2;
    default: return 0;
  }
}

// Restriction of a full-space matrix to given source/target weight blocks.
template <class S>
Matrix<S> restrict_blocks(const TensorSpace& sp, const Matrix<S>& full, int nu_in, int nu_out) {
  const auto& src = sp.block(nu_in);
  const auto& dst = sp.block(nu_out);
  Matrix<S> r(int(dst.size()), int(src.size()));
  for (size_t i = 0; i < dst.size(); ++i)
    for (size_t j = 0; j < src.size(); ++j) r(int(i), int(j)) = full(dst[i], src[j]);
  return r;
}

template <class S>
WeightMatrix<S> act_generator(const TensorSpace& sp, Gen g, int site, int nu) {
  const int nu_out = nu + generator_weight_shift(g);
  WeightMatrix<S> wm;
  wm.nu_in = nu;
  wm.nu_out = nu_out;
  if (!sp.has_block(nu)) throw std::invalid_argument("act_generator: empty weight block");
  Matrix<S> full = generator_matrix<S>(sp, g, site);
  if (!sp.has_block(nu_out)) {
    // The shifted block can be empty (top/bottom of the weight ladder); the
    // action is then the zero map to a 0-dimensional space.
    wm.mat = Matrix<S>(0, sp.block_dim(nu));
    return wm;
  }
  wm.mat = restrict_blocks(sp, full, nu, nu_out);
  return wm;
}

// Weyl involution on the full space: v_k -> (-1)^k v_{m-k} in each factor.
template <class S>
Matrix<S> weyl_sigma_full(const TensorSpace& sp) {
  Matrix<S> out(sp.dim(), sp.dim());
  for (int col = 0; col < sp.dim(); ++col) {
    std::vector<int> t = sp.tuple(col);
    int sign = 0;
    for (int s = 0; s < sp.sites(); ++s) {
      sign += t[s];
      t[s] = sp.ms()[s] - t[s];
    }
    out(sp.index_of(t), col) = scalar_traits<S>::ratio(sign % 2 == 0 ? 1 : -1, 1);
  }
  return out;
}

template <class S>
WeightMatrix<S> weyl_sigma(const TensorSpace& sp, int nu) {
  if (!sp.has_block(nu) || !sp.has_block(-nu))
    throw std::invalid_argument("weyl_sigma: empty weight block");
  WeightMatrix<S> wm;
  wm.nu_in = nu;
  wm.nu_out = -nu;
  wm.mat = restrict_blocks(sp, weyl_sigma_full<S>(sp), nu, -nu);
  return wm;
}

// The operator p(mu) restricted to V[nu].  On a weight block the series
//   p(mu) = sum_k e21^k e12^k (1/k!) prod_{j<k} (mu + e22 - e11 - j)^{-1}
// truncates (E12^k kills V[nu] once k exceeds (M-nu)/2) and the diagonal
// factor is the scalar prod_{j<k} (mu - nu - j)^{-1}, because it acts first,
// on the weight-nu input.
template <class S>
Matrix<S> dynamical_weyl_p(const TensorSpace& sp, const S& mu, int nu) {
  if (!sp.has_block(nu)) throw std::invalid_argument("dynamical_weyl_p: empty weight block");
  const int d = sp.block_dim(nu);
  // Work with full-space powers; restriction at the end keeps the code short.
  Matrix<S> e12 = generator_matrix<S>(sp, Gen::e12, kDiagonal);
  Matrix<S> e21 = generator_matrix<S>(sp, Gen::e21, kDiagonal);
  Matrix<S> result = Matrix<S>::identity(d);
  Matrix<S> e12_pow = Matrix<S>::identity(sp.dim());
  Matrix<S> e21_pow = Matrix<S>::identity(sp.dim());
  S factor = scalar_traits<S>::one();  // 1/k! * prod_j (mu - nu - j)^{-1}
  const int kmax = (sp.total_weight() - nu) / 2;
  for (int k = 1; k <= kmax; ++k) {
    e12_pow = e12 * e12_pow;
    e21_pow = e21 * e21_pow;
    Matrix<S> term_full = e21_pow * e12_pow;
    Matrix<S> term = restrict_blocks(sp, term_full, nu, nu);
    if (term.is_zero()) break;
    S denom = mu - scalar_traits<S>::ratio(nu + (k - 1), 1);
    if (scalar_traits<S>::is_zero(denom))
      throw std::domain_error("dynamical_weyl_p: pole at mu = nu + " + std::to_string(k - 1) +
                              " (offending j = " + std::to_string(k - 1) + ")");
    factor = factor / (scalar_traits<S>::ratio(k, 1) * denom);
    result += term * factor;
  }
  return result;
}

// A(mu) = sigma . p(mu): V[nu] -> V[-nu].
template <class S>
WeightMatrix<S> dynamical_weyl_A(const TensorSpace& sp, const S& mu, int nu) {
  WeightMatrix<S> wm;
  wm.nu_in = nu;
  wm.nu_out = -nu;
  wm.mat = weyl_sigma<S>(sp, nu).mat * dynamical_weyl_p<S>(sp, mu, nu);
  return wm;
}

}  // namespace gaudin
