#pragma once

#include "catcom/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace catcom {

namespace detail {

/// Phase-one simplex with Bland's rule: a point x >= 0 with A x = b, or
/// nullopt when the system is infeasible. Exact over the rationals.
inline std::optional<std::vector<Rational>> simplex_feasible(const Matrix<Rational>& a,
                                                             std::span<const Rational> b) {
  const std::size_t d = a.rows();
  const std::size_t m = a.cols();
  const std::size_t width = m + d + 1;  // originals, artificials, rhs
  Matrix<Rational> t(d, width);
  for (std::size_t i = 0; i < d; ++i) {
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < m; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, m + i) = 1;
    t(i, width - 1) = flip ? Rational(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(d);
  for (std::size_t i = 0; i < d; ++i) basis[i] = m + i;

  // obj(j) = sum of constraint rows; entering candidates have obj > 0 among
  // non-artificial columns; the rhs entry is the current infeasibility.
  std::vector<Rational> obj(width, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < m || j == width - 1) obj[j] += t(i, j);

  for (;;) {
    std::size_t enter = m;
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(obj[j]) > 0) {
        enter = j;
        break;
      }
    if (enter == m) break;
    std::size_t leave = d;
    Rational best;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(t(i, enter)) <= 0) continue;
      Rational ratio = t(i, width - 1) / t(i, enter);
      if (leave == d || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == d) break;  // unbounded direction; cannot happen in phase one
    const Rational piv = t(leave, enter);
    for (std::size_t j = 0; j < width; ++j) t(leave, j) /= piv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == leave || sgn(t(i, enter)) == 0) continue;
      const Rational f = t(i, enter);
      for (std::size_t j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
    }
    if (sgn(obj[enter]) != 0) {
      const Rational f = obj[enter];
      for (std::size_t j = 0; j < width; ++j) obj[j] -= f * t(leave, j);
    }
    basis[leave] = enter;
  }
  if (sgn(obj[width - 1]) != 0) return std::nullopt;
  std::vector<Rational> x(m, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    if (basis[i] < m) x[basis[i]] = t(i, width - 1);
  return x;
}

/// Lawson-Hanson nonnegative least squares; returns the minimiser.
inline std::vector<double> nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index m = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  const double eps = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());

  auto solve_passive = [&](Eigen::VectorXd& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < m; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    s = Eigen::VectorXd::Zero(m);
    if (idx.empty()) return;
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    Eigen::VectorXd sp = ap.colPivHouseholderQr().solve(b);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(static_cast<Eigen::Index>(k));
  };

  const int max_outer = static_cast<int>(3 * m + 10);
  for (int outer = 0; outer < max_outer; ++outer) {
    Eigen::VectorXd w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double best_w = eps;
    for (Eigen::Index j = 0; j < m; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    Eigen::VectorXd s;
    solve_passive(s);
    for (int inner = 0; inner < max_outer; ++inner) {
      bool feasible = true;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0) feasible = false;
      if (feasible) break;
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0) alpha = std::min(alpha, x(j) / (x(j) - s(j)));
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[static_cast<std::size_t>(j)] && x(j) <= eps) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      solve_passive(s);
    }
    x = s;
  }
  return {x.data(), x.data() + x.size()};
}

}  // namespace detail

/// Nonnegative weights w with sum_i w_i * generators.row(i) == target.
///
/// Exact backends decide membership by phase-one simplex. Floating backends
/// run nonnegative least squares and accept when the residual is at most
/// `tol.cone * max(1, |target|)`.
template <class T>
std::optional<std::vector<T>> conic_combination(const Matrix<T>& generators, std::span<const T> target,
                                                const Tolerances& tol) {
  const std::size_t m = generators.rows();
  const std::size_t d = target.size();
  if (m == 0) {
    if (all_zero(target, tol.num)) return std::vector<T>{};
    return std::nullopt;
  }
  if constexpr (is_exact_v<T>) {
    return detail::simplex_feasible(generators.transpose(), target);
  } else {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(m));
    Eigen::VectorXd b(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
      b(static_cast<Eigen::Index>(i)) = target[i];
      for (std::size_t k = 0; k < m; ++k) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = generators(k, i);
    }
    auto w = detail::nnls(a, b);
    Eigen::VectorXd wx = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(m));
    const double residual = (a * wx - b).norm();
    if (residual > tol.cone * std::max(1.0, b.norm())) return std::nullopt;
    return w;
  }
}

}  // namespace catcom
