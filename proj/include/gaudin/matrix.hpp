#pragma once

// Small dense matrices over a scalar backend, with Gaussian elimination.
// Everything here is desk scale (dimensions rarely exceed a few dozen), so
// the routines favor exactness and clarity.  Partial pivoting by magnitude
// estimate works for both backends: for CRat the estimate only picks the
// pivot, the arithmetic itself stays exact.

#include <stdexcept>
#include <vector>

#include "gaudin/scalar.hpp"

namespace gaudin {

template <class S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(size_t(rows) * cols, scalar_traits<S>::zero()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(const S& c) {
    for (auto& v : a_) v *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& c) { return a *= c; }
  friend Matrix operator*(const S& c, Matrix a) { return a *= c; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.a_) v = -v;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (scalar_traits<S>::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("Matrix: vector length mismatch");
    std::vector<S> r(rows_, scalar_traits<S>::zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!scalar_traits<S>::is_zero(v)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, scalar_traits<S>::abs_est(v));
    return m;
  }

  Matrix commutator(const Matrix& o) const { return (*this) * o - o * (*this); }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
  }

  int rows_, cols_;
  std::vector<S> a_;
};

template <class S>
double max_abs(const std::vector<S>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, scalar_traits<S>::abs_est(x));
  return m;
}

// Row echelon solve of A x = b where A may have more rows than columns but
// the system is expected to be consistent (the extra rows are dependent).
// Returns the solution of the pivot rows plus the max-norm estimate of the
// residual on all rows; with the exact backend a consistent system reports
// residual exactly 0.
template <class S>
struct SolveOutcome {
  std::vector<S> x;
  double residual = 0;  // max-norm estimate of A x - b
  bool unique = true;   // rank == number of unknowns
};

template <class S>
SolveOutcome<S> solve_consistent(Matrix<S> a, std::vector<S> b) {
  const int n = a.rows(), m = a.cols();
  if (int(b.size()) != n) throw std::invalid_argument("solve_consistent: length mismatch");
  std::vector<int> pivot_row_of_col(m, -1);
  int next_row = 0;
  for (int col = 0; col < m && next_row < n; ++col) {
    int piv = -1;
    double best = 0;
    for (int r = next_row; r < n; ++r) {
      double est = scalar_traits<S>::abs_est(a(r, col));
      if (!scalar_traits<S>::is_zero(a(r, col)) && est > best) {
        best = est;
        piv = r;
      }
    }
    if (piv < 0) continue;
    if (piv != next_row) {
      for (int j = 0; j < m; ++j) std::swap(a(piv, j), a(next_row, j));
      std::swap(b[piv], b[next_row]);
    }
    for (int r = next_row + 1; r < n; ++r) {
      if (scalar_traits<S>::is_zero(a(r, col))) continue;
      S f = a(r, col) / a(next_row, col);
      for (int j = col; j < m; ++j) a(r, j) -= f * a(next_row, j);
      b[r] -= f * b[next_row];
    }
    pivot_row_of_col[col] = next_row;
    ++next_row;
  }

  SolveOutcome<S> out;
  out.x.assign(m, scalar_traits<S>::zero());
  for (int col = 0; col < m; ++col)
    if (pivot_row_of_col[col] < 0) out.unique = false;
  // Back substitution over the pivot rows.
  for (int col = m - 1; col >= 0; --col) {
    int r = pivot_row_of_col[col];
    if (r < 0) continue;
    S acc = b[r];
    for (int j = col + 1; j < m; ++j) acc -= a(r, j) * out.x[j];
    out.x[col] = acc / a(r, col);
  }
  // Residual over the eliminated rows (rows without pivots are untouched by
  // back substitution, so their entries measure inconsistency directly).
  double res = 0;
  for (int r = next_row; r < n; ++r) {
    S acc = b[r];
    for (int j = 0; j < m; ++j) acc -= a(r, j) * out.x[j];
    res = std::max(res, scalar_traits<S>::abs_est(acc));
  }
  out.residual = res;
  return out;
}

template <class S>
std::vector<S> solve_square(const Matrix<S>& a, const std::vector<S>& b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_square: matrix not square");
  SolveOutcome<S> out = solve_consistent(a, b);
  if (!out.unique) throw std::domain_error("solve_square: singular matrix");
  return out.x;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse: matrix not square");
  Matrix<S> inv(n, n);
  for (int col = 0; col < n; ++col) {
    std::vector<S> e(n, scalar_traits<S>::zero());
    e[col] = scalar_traits<S>::one();
    std::vector<S> x = solve_square(a, e);
    for (int i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  return inv;
}

template <class S>
S determinant(Matrix<S> a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant: matrix not square");
  S det = scalar_traits<S>::one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = 0;
    for (int r = col; r < n; ++r) {
      double est = scalar_traits<S>::abs_est(a(r, col));
      if (!scalar_traits<S>::is_zero(a(r, col)) && est > best) best = est, piv = r;
    }
    if (piv < 0) return scalar_traits<S>::zero();
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (scalar_traits<S>::is_zero(a(r, col))) continue;
      S f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

}  // namespace gaudin
