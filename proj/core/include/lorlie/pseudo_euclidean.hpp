#pragma once

#include <optional>
#include <vector>

#include "lorlie/linear_algebra.hpp"

namespace lorlie {

/// (negative, positive) directions of a nondegenerate form.
struct Signature {
  std::size_t negative = 0;
  std::size_t positive = 0;

  bool is_euclidean() const noexcept { return negative == 0; }
  bool is_lorentzian() const noexcept { return negative == 1; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Pᵀ g P = diag(d), columns of P form a g-orthogonal basis.
template <typename T>
struct CongruenceDiagonalization {
  Matrix<T> basis;
  Vector<T> diagonal;
};

/// Symmetric Gaussian congruence. Degenerate forms yield zero diagonal
/// entries instead of an error.
template <typename T>
CongruenceDiagonalization<T> congruence_diagonalize(const Matrix<T>& g);

/// Sylvester counts from a congruence diagonalization.
template <typename T>
Signature signature(const Matrix<T>& g);

/// Symmetric nondegenerate bilinear form.
template <typename T>
class MetricTensor {
 public:
  /// Throws shape_mismatch for non-square/non-symmetric input and
  /// degenerate_metric when det(g) = 0.
  explicit MetricTensor(Matrix<T> gram);

  static MetricTensor euclidean(std::size_t n) { return MetricTensor(Matrix<T>::identity(n)); }
  /// diag(-1, 1, ..., 1)
  static MetricTensor minkowski(std::size_t n);

  std::size_t dim() const noexcept { return gram_.rows(); }
  const Matrix<T>& gram() const noexcept { return gram_; }
  const Matrix<T>& inverse() const noexcept { return inverse_; }
  Signature signature() const noexcept { return signature_; }

  T inner(const Vector<T>& u, const Vector<T>& v) const;
  T norm_squared(const Vector<T>& u) const { return inner(u, u); }

  /// g-dual of a linear form given by its values on the basis.
  Vector<T> raise(const Vector<T>& form) const { return inverse_ * form; }

 private:
  Matrix<T> gram_;
  Matrix<T> inverse_;
  Signature signature_;
};

/// F* = g⁻¹ Fᵀ g, i.e. <F u, v> = <u, F* v>.
template <typename T>
Matrix<T> metric_adjoint(const Matrix<T>& f, const MetricTensor<T>& g);

/// F* = -F, checked as Fᵀ g + g F = 0.
template <typename T>
bool is_skew_symmetric(const Matrix<T>& f, const MetricTensor<T>& g);

/// (e, ē, f₁..f_{n-2}) with <e,ē> = 1, e and ē null, fᵢ orthogonal to both
/// and to each other. Exact mode normalizes fᵢ only when <fᵢ,fᵢ> is a
/// rational square; spacelike_norms records <fᵢ,fᵢ> (all 1 in float mode).
template <typename T>
struct WittBasis {
  Vector<T> e;
  Vector<T> e_bar;
  std::vector<Vector<T>> spacelike;
  Vector<T> spacelike_norms;

  bool orthonormal() const {
    for (const auto& n : spacelike_norms)
      if (!is_zero(n - T(1))) return false;
    return true;
  }
  /// Columns (e, ē, f₁, ...).
  Matrix<T> matrix() const;
};

/// Checks the null pair, the orthogonality relations and positivity of the
/// recorded spacelike norms.
template <typename T>
bool check_witt_basis(const WittBasis<T>& basis, const MetricTensor<T>& g);

template <typename T>
WittBasis<T> complete_witt_basis(const Vector<T>& e, const MetricTensor<T>& g);

/// As above, but the spacelike vectors are taken block by block from the
/// given subspaces. Each block must contain e and lie in e^⊥; blocks must be
/// mutually orthogonal and together span e^⊥.
template <typename T>
WittBasis<T> complete_witt_basis_adapted(const Vector<T>& e, const MetricTensor<T>& g,
                                         const std::vector<Subspace<T>>& blocks);

/// Gram matrix of g on S, or nullopt when it is degenerate.
template <typename T>
std::optional<MetricTensor<T>> restrict_metric(const MetricTensor<T>& g, const Subspace<T>& s);

template <typename T>
Matrix<T> gram_matrix(const MetricTensor<T>& g, const Subspace<T>& s);

template <typename T>
Subspace<T> orthogonal_complement(const Subspace<T>& s, const MetricTensor<T>& g);

/// S ∩ S^⊥: the null directions of g restricted to S.
template <typename T>
Subspace<T> radical(const Subspace<T>& s, const MetricTensor<T>& g);

/// Float mode treats |<e,e>| < eps * |e|^2 as null.
template <typename T>
bool is_isotropic(const Vector<T>& e, const MetricTensor<T>& g);

/// A vector u in S with <u,u> < 0, if any.
template <typename T>
std::optional<Vector<T>> find_timelike(const Subspace<T>& s, const MetricTensor<T>& g);

}  // namespace lorlie
