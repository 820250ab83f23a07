#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "lorlie/error.hpp"
#include "lorlie/scalar.hpp"

namespace lorlie {

template <typename T>
using Vector = std::vector<T>;

/// Dense row-major matrix. Endomorphisms act on column vectors.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw Error(ErrorKind::shape_mismatch, "ragged matrix literal");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const Vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// Columns are the given vectors.
  static Matrix from_columns(const std::vector<Vector<T>>& columns,
                             std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vector<T> column(std::size_t j) const {
    Vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vector<T> row(std::size_t i) const {
    return Vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  void set_column(std::size_t j, const Vector<T>& v) {
    if (v.size() != rows_) {
      throw Error(ErrorKind::shape_mismatch, "column length mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  /// Largest |entry| as a double; used to scale float-mode comparisons.
  double max_magnitude() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, magnitude(x));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::shape_mismatch, "matrix product shape mismatch");
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_exact_v<T> && is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
    if (a.cols_ != v.size()) {
      throw Error(ErrorKind::shape_mismatch, "matrix-vector shape mismatch");
    }
    Vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorKind::shape_mismatch, "matrix shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

template <typename U, typename T>
Matrix<U> matrix_cast(const Matrix<T>& m) {
  Matrix<U> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<U, T>) {
        out(i, j) = m(i, j);
      } else {
        out(i, j) = scalar_cast<U>(m(i, j));
      }
    }
  return out;
}

template <typename U, typename T>
Vector<U> vector_cast(const Vector<T>& v) {
  Vector<U> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if constexpr (std::is_same_v<U, T>) {
      out.push_back(x);
    } else {
      out.push_back(scalar_cast<U>(x));
    }
  }
  return out;
}

/// Exact equality for rationals; relative tolerance for doubles.
template <typename T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    const double scale = std::max(a.max_magnitude(), b.max_magnitude());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (!is_zero(a(i, j) - b(i, j), scale)) return false;
    return true;
  }
}

template <typename T>
bool is_zero_matrix(const Matrix<T>& a, double scale = 1.0) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j), scale)) return false;
  return true;
}

// Vector helpers. Named rather than operator overloads on std::vector.

template <typename T>
Vector<T> unit_vector(std::size_t n, std::size_t i) {
  Vector<T> v(n, T(0));
  v[i] = T(1);
  return v;
}

template <typename T>
T dot(const Vector<T>& u, const Vector<T>& v) {
  T s(0);
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

template <typename T>
Vector<T> add(const Vector<T>& u, const Vector<T>& v) {
  Vector<T> w(u);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += v[i];
  return w;
}

template <typename T>
Vector<T> subtract(const Vector<T>& u, const Vector<T>& v) {
  Vector<T> w(u);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= v[i];
  return w;
}

template <typename T>
Vector<T> scaled(const Vector<T>& u, const T& s) {
  Vector<T> w(u);
  for (auto& x : w) x *= s;
  return w;
}

/// u += s * v
template <typename T>
void axpy(Vector<T>& u, const T& s, const Vector<T>& v) {
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += s * v[i];
}

template <typename T>
double max_magnitude(const Vector<T>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, magnitude(x));
  return m;
}

template <typename T>
bool is_zero_vector(const Vector<T>& v, double scale = 1.0) {
  return std::all_of(v.begin(), v.end(),
                     [scale](const T& x) { return is_zero(x, scale); });
}

/// Outer product u vᵀ.
template <typename T>
Matrix<T> outer(const Vector<T>& u, const Vector<T>& v) {
  Matrix<T> m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

}  // namespace lorlie
