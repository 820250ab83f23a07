#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lorlie/matrix.hpp"

namespace lorlie {

template <typename T>
struct RowEchelon {
  Matrix<T> reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

/// Gauss-Jordan elimination. Float mode pivots on the largest |entry| in the
/// column and treats entries below eps * max|m| as zero.
template <typename T>
RowEchelon<T> row_reduce(Matrix<T> m) {
  const double scale = m.max_magnitude();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    if constexpr (is_exact_v<T>) {
      for (std::size_t r = row; r < m.rows(); ++r)
        if (!is_zero(m(r, col))) {
          best = r;
          break;
        }
    } else {
      double best_mag = 0.0;
      for (std::size_t r = row; r < m.rows(); ++r) {
        const double mag = magnitude(m(r, col));
        if (!is_zero(m(r, col), scale) && mag > best_mag) {
          best = r;
          best_mag = mag;
        }
      }
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
    const T inv = T(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col), scale)) {
        if constexpr (!is_exact_v<T>) {
          if (r != row) m(r, col) = T(0);
        }
        continue;
      }
      const T f = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
      m(r, col) = T(0);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename T>
std::size_t rank(const Matrix<T>& m) {
  return row_reduce(m).pivots.size();
}

/// Basis of {x : m x = 0}.
template <typename T>
std::vector<Vector<T>> kernel(const Matrix<T>& m) {
  const auto rref = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rref.pivots) is_pivot[p] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < rref.pivots.size(); ++r)
      v[rref.pivots[r]] = -rref.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename T>
std::optional<Matrix<T>> try_inverse(const Matrix<T>& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  const auto rref = row_reduce(aug);
  if (rref.pivots.size() < n || rref.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rref.reduced(i, n + j);
  return inv;
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (m.rows() == 0 && m.cols() == 0) return m;
  auto inv = try_inverse(m);
  if (!inv) throw Error(ErrorKind::singular_matrix, "matrix is singular");
  return *std::move(inv);
}

template <typename T>
T determinant(Matrix<T> m) {
  if (!m.is_square()) throw Error(ErrorKind::shape_mismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  const double scale = m.max_magnitude();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    double best_mag = 0.0;
    for (std::size_t r = c; r < n; ++r) {
      if (is_zero(m(r, c), scale)) continue;
      if constexpr (is_exact_v<T>) {
        best = r;
        break;
      } else if (magnitude(m(r, c)) > best_mag) {
        best = r;
        best_mag = magnitude(m(r, c));
      }
    }
    if (best == n) return T(0);
    if (best != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(best, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      const T f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Some solution of a x = b, if one exists.
template <typename T>
std::optional<Vector<T>> solve(const Matrix<T>& a, const Vector<T>& b) {
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto rref = row_reduce(aug);
  if (!rref.pivots.empty() && rref.pivots.back() == a.cols()) return std::nullopt;
  Vector<T> x(a.cols(), T(0));
  for (std::size_t r = 0; r < rref.pivots.size(); ++r)
    x[rref.pivots[r]] = rref.reduced(r, a.cols());
  return x;
}

/// Greedy maximal independent subfamily, preserving order.
template <typename T>
std::vector<Vector<T>> independent_subset(const std::vector<Vector<T>>& vectors,
                                          std::size_t ambient) {
  std::vector<Vector<T>> chosen;
  for (const auto& v : vectors) {
    auto trial = chosen;
    trial.push_back(v);
    if (rank(Matrix<T>::from_columns(trial, ambient)) == trial.size()) {
      chosen = std::move(trial);
    }
  }
  return chosen;
}

/// Linear subspace of T^n given by an independent spanning family.
template <typename T>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  /// Span of arbitrary vectors (dependent ones are dropped).
  static Subspace span(std::size_t ambient, const std::vector<Vector<T>>& vectors) {
    Subspace s(ambient);
    s.basis_ = independent_subset(vectors, ambient);
    return s;
  }

  static Subspace whole(std::size_t ambient) {
    std::vector<Vector<T>> e;
    for (std::size_t i = 0; i < ambient; ++i) e.push_back(unit_vector<T>(ambient, i));
    Subspace s(ambient);
    s.basis_ = std::move(e);
    return s;
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  const std::vector<Vector<T>>& basis() const noexcept { return basis_; }

  /// ambient x dim matrix whose columns are the basis.
  Matrix<T> basis_matrix() const { return Matrix<T>::from_columns(basis_, ambient_); }

  bool contains(const Vector<T>& v) const {
    auto trial = basis_;
    trial.push_back(v);
    return rank(Matrix<T>::from_columns(trial, ambient_)) == basis_.size();
  }

  bool contains(const Subspace& other) const {
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  bool same_as(const Subspace& other) const {
    return dim() == other.dim() && contains(other);
  }

  Subspace sum(const Subspace& other) const {
    auto all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, all);
  }

  Subspace intersect(const Subspace& other) const {
    // x in both iff x = A a = B b, i.e. [A | -B] (a, b) = 0.
    if (is_zero() || other.is_zero()) return Subspace(ambient_);
    Matrix<T> m(ambient_, dim() + other.dim());
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t i = 0; i < ambient_; ++i) m(i, j) = basis_[j][i];
    for (std::size_t j = 0; j < other.dim(); ++j)
      for (std::size_t i = 0; i < ambient_; ++i) m(i, dim() + j) = -other.basis_[j][i];
    std::vector<Vector<T>> vecs;
    for (const auto& k : kernel(m)) {
      Vector<T> x(ambient_, T(0));
      for (std::size_t j = 0; j < dim(); ++j) axpy(x, k[j], basis_[j]);
      vecs.push_back(std::move(x));
    }
    return span(ambient_, vecs);
  }

  /// Coordinates of v in this basis, or nullopt when v is outside.
  std::optional<Vector<T>> coordinates(const Vector<T>& v) const {
    return solve(basis_matrix(), v);
  }

  /// Extends the basis by standard vectors to a basis of the ambient space;
  /// returns only the added vectors.
  std::vector<Vector<T>> complement_basis() const {
    auto all = basis_;
    std::vector<Vector<T>> added;
    for (std::size_t i = 0; i < ambient_ && all.size() < ambient_; ++i) {
      auto trial = all;
      trial.push_back(unit_vector<T>(ambient_, i));
      if (rank(Matrix<T>::from_columns(trial, ambient_)) == trial.size()) {
        all = std::move(trial);
        added.push_back(unit_vector<T>(ambient_, i));
      }
    }
    return added;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector<T>> basis_;
};

}  // namespace lorlie
