#pragma once

#include "catcom/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace catcom {

/// Dense row-major matrix over an exact or floating number type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == cols);
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
  std::vector<T> col_vector(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      std::copy(row(idx[i]).begin(), row(idx[i]).end(), m.row(i).begin());
    return m;
  }
  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  assert(a.cols() == b.rows());
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (NumberTraits<T>::is_zero(a(i, k), 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> x) {
  assert(a.cols() == x.size());
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  assert(a.size() == b.size());
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Row vector times matrix.
template <class T>
std::vector<T> row_times(std::span<const T> x, const Matrix<T>& a) {
  assert(a.rows() == x.size());
  std::vector<T> y(a.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (NumberTraits<T>::is_zero(x[i], 0.0)) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += x[i] * a(i, j);
  }
  return y;
}

/// Coordinates of a Kronecker product of two coordinate vectors, (i,j) -> i*|b|+j.
template <class T>
std::vector<T> kron(std::span<const T> a, std::span<const T> b) {
  std::vector<T> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

template <class T>
double max_abs_diff(std::span<const T> a, std::span<const T> b) {
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, NumberTraits<T>::error(a[i], b[i]));
  return m;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) m = std::max(m, max_abs_diff(a.row(i), b.row(i)));
  return m;
}

template <class T>
bool all_zero(std::span<const T> v, double tol) {
  return std::all_of(v.begin(), v.end(), [&](const T& x) { return NumberTraits<T>::is_zero(x, tol); });
}

namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

}  // namespace detail

inline double largest_singular_value(const Matrix<double>& m) {
  if (m.empty()) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(detail::to_eigen(m));
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

/// Greedy leftmost selection of linearly independent vectors.
///
/// Exact: rows are kept in echelon form with unit pivots. Floating: an
/// orthonormal frame is maintained by twice-iterated Gram-Schmidt and a
/// candidate is accepted when its residual norm exceeds `threshold`.
template <class T>
class IndependenceTracker {
 public:
  explicit IndependenceTracker(std::size_t width, double threshold = 0.0)
      : width_(width), threshold_(threshold) {}

  bool try_add(std::span<const T> v) {
    assert(v.size() == width_);
    std::vector<T> r(v.begin(), v.end());
    if constexpr (is_exact_v<T>) {
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        const T f = r[pivots_[k]];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < width_; ++j)
          if (sgn(rows_[k][j]) != 0) r[j] -= f * rows_[k][j];
      }
      auto it = std::find_if(r.begin(), r.end(), [](const T& x) { return sgn(x) != 0; });
      if (it == r.end()) return false;
      const std::size_t p = static_cast<std::size_t>(it - r.begin());
      const T inv = T(1) / r[p];
      for (auto& x : r) x *= inv;
      rows_.push_back(std::move(r));
      pivots_.push_back(p);
      return true;
    } else {
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : rows_) {
          const double c = dot<double>(q, r);
          for (std::size_t j = 0; j < width_; ++j) r[j] -= c * q[j];
        }
      double n = 0.0;
      for (double x : r) n += x * x;
      n = std::sqrt(n);
      if (n <= threshold_ || n == 0.0) return false;
      for (auto& x : r) x /= n;
      rows_.push_back(std::move(r));
      return true;
    }
  }

  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  std::size_t width_;
  double threshold_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Cutoff used for a floating matrix under the relative singular-value policy.
inline double rank_threshold(const Matrix<double>& m, const Tolerances& tol) {
  return tol.rank * largest_singular_value(m);
}

/// Indices of the leftmost maximal independent subset of the rows.
template <class T>
std::vector<std::size_t> greedy_independent_rows(const Matrix<T>& m, const Tolerances& tol) {
  double threshold = 0.0;
  if constexpr (!is_exact_v<T>) threshold = rank_threshold(m, tol);
  IndependenceTracker<T> tracker(m.cols(), threshold);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (picked.size() == m.cols()) break;
    if (tracker.try_add(m.row(i))) picked.push_back(i);
  }
  return picked;
}

template <class T>
std::vector<std::size_t> greedy_independent_cols(const Matrix<T>& m, const Tolerances& tol) {
  return greedy_independent_rows(m.transpose(), tol);
}

/// Rank under the backend's policy: exact elimination, or singular values
/// above `tol.rank * sigma_max`.
template <class T>
std::size_t rank(const Matrix<T>& m, const Tolerances& tol) {
  if (m.empty()) return 0;
  if constexpr (is_exact_v<T>) {
    return greedy_independent_rows(m, tol).size();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(detail::to_eigen(m));
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double cut = tol.rank * s(0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > cut) ++r;
    return r;
  }
}

/// Reduced row echelon form over the rationals; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix<Rational>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// A nonzero vector x with m*x = 0, if the columns are dependent.
template <class T>
std::optional<std::vector<T>> kernel_vector(const Matrix<T>& m, const Tolerances& tol) {
  const std::size_t n = m.cols();
  if (n == 0) return std::nullopt;
  if constexpr (is_exact_v<T>) {
    Matrix<Rational> a = m;
    const auto piv = rref(a);
    if (piv.size() == n) return std::nullopt;
    std::vector<bool> is_pivot(n, false);
    for (auto c : piv) is_pivot[c] = true;
    const std::size_t free =
        static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());
    std::vector<Rational> x(n, Rational(0));
    x[free] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -a(k, free);
    return x;
  } else {
    if (m.rows() == 0) {
      std::vector<double> x(n, 0.0);
      x[0] = 1.0;
      return x;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::to_eigen(m), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = tol.rank * (s.size() ? s(0) : 0.0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > cut) ++r;
    if (r == n) return std::nullopt;
    Eigen::VectorXd v = svd.matrixV().col(static_cast<Eigen::Index>(n - 1));
    return std::vector<double>(v.data(), v.data() + v.size());
  }
}

/// Exact determinant by fraction elimination.
inline Rational determinant(Matrix<Rational> m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Inverse of a square matrix, or nullopt if singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  if constexpr (is_exact_v<T>) {
    Matrix<Rational> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
      aug(i, n + i) = 1;
    }
    const auto piv = rref(aug);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
    Matrix<Rational> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  } else {
    if (n == 0) return Matrix<double>();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(detail::to_eigen(m));
    if (!lu.isInvertible()) return std::nullopt;
    return detail::from_eigen(lu.inverse());
  }
}

}  // namespace catcom
