#include "lorlie/pseudo_euclidean.hpp"

#include <cmath>

namespace lorlie {

template <typename T>
CongruenceDiagonalization<T> congruence_diagonalize(const Matrix<T>& g) {
  if (!g.is_square()) throw Error(ErrorKind::shape_mismatch, "metric must be square");
  const std::size_t n = g.rows();
  const double scale = g.max_magnitude();
  Matrix<T> a = g;
  Matrix<T> p = Matrix<T>::identity(n);

  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < n; ++k) std::swap(p(k, i), p(k, j));
  };

  for (std::size_t k = 0; k < n; ++k) {
    // Prefer a nonzero diagonal pivot (largest in float mode).
    std::size_t pivot = n;
    double best = 0.0;
    for (std::size_t j = k; j < n; ++j) {
      if (is_zero(a(j, j), scale)) continue;
      if constexpr (is_exact_v<T>) {
        pivot = j;
        break;
      } else if (magnitude(a(j, j)) > best) {
        best = magnitude(a(j, j));
        pivot = j;
      }
    }
    if (pivot == n) {
      // All remaining diagonal entries vanish: use an off-diagonal entry and
      // replace b_i by b_i + b_j, whose square is 2 a_ij.
      std::size_t pi = n, pj = n;
      best = 0.0;
      for (std::size_t i = k; i < n && (pi == n || !is_exact_v<T>); ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (is_zero(a(i, j), scale)) continue;
          if (is_exact_v<T>) {
            pi = i;
            pj = j;
            break;
          }
          if (magnitude(a(i, j)) > best) {
            best = magnitude(a(i, j));
            pi = i;
            pj = j;
          }
        }
      if (pi == n) break;  // remaining block is zero
      swap_index(k, pi);
      if (pj == k) pj = pi;
      for (std::size_t c = 0; c < n; ++c) a(k, c) += a(pj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, k) += a(r, pj);
      for (std::size_t r = 0; r < n; ++r) p(r, k) += p(r, pj);
      pivot = k;
    }
    swap_index(k, pivot);
    const T d = a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (is_zero(a(r, k), scale)) continue;
      const T f = a(r, k) / d;
      for (std::size_t c = 0; c < n; ++c) a(r, c) -= f * a(k, c);
      for (std::size_t c = 0; c < n; ++c) a(c, r) -= f * a(c, k);
      for (std::size_t c = 0; c < n; ++c) p(c, r) -= f * p(c, k);
    }
  }

  Vector<T> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = is_zero(a(i, i), scale) ? T(0) : a(i, i);
  return {std::move(p), std::move(diag)};
}

template <typename T>
Signature signature(const Matrix<T>& g) {
  const auto cd = congruence_diagonalize(g);
  Signature s;
  for (const auto& d : cd.diagonal) {
    const int sg = sign(d);
    if (sg == 0) throw Error(ErrorKind::degenerate_metric, "metric is degenerate");
    (sg < 0 ? s.negative : s.positive)++;
  }
  return s;
}

template <typename T>
MetricTensor<T>::MetricTensor(Matrix<T> gram) : gram_(std::move(gram)) {
  if (!gram_.is_square()) throw Error(ErrorKind::shape_mismatch, "metric must be square");
  if (!approx_equal(gram_, gram_.transpose())) {
    throw Error(ErrorKind::shape_mismatch, "metric must be symmetric");
  }
  signature_ = lorlie::signature(gram_);
  inverse_ = lorlie::inverse(gram_);
}

template <typename T>
MetricTensor<T> MetricTensor<T>::minkowski(std::size_t n) {
  auto g = Matrix<T>::identity(n);
  if (n > 0) g(0, 0) = T(-1);
  return MetricTensor(std::move(g));
}

template <typename T>
T MetricTensor<T>::inner(const Vector<T>& u, const Vector<T>& v) const {
  T s(0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if constexpr (is_exact_v<T>) {
      if (is_zero(u[i])) continue;
    }
    for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * gram_(i, j) * v[j];
  }
  return s;
}

template <typename T>
Matrix<T> metric_adjoint(const Matrix<T>& f, const MetricTensor<T>& g) {
  if (f.rows() != g.dim() || f.cols() != g.dim()) {
    throw Error(ErrorKind::shape_mismatch, "endomorphism and metric dimensions differ");
  }
  return g.inverse() * f.transpose() * g.gram();
}

template <typename T>
bool is_skew_symmetric(const Matrix<T>& f, const MetricTensor<T>& g) {
  if (f.rows() != g.dim() || f.cols() != g.dim()) return false;
  const Matrix<T> gf = g.gram() * f;
  const Matrix<T> sym = f.transpose() * g.gram() + gf;
  return is_zero_matrix(sym, gf.max_magnitude());
}

template <typename T>
Matrix<T> WittBasis<T>::matrix() const {
  std::vector<Vector<T>> cols{e, e_bar};
  cols.insert(cols.end(), spacelike.begin(), spacelike.end());
  return Matrix<T>::from_columns(cols, e.size());
}

template <typename T>
bool check_witt_basis(const WittBasis<T>& b, const MetricTensor<T>& g) {
  const double scale = std::max(max_magnitude(b.e), max_magnitude(b.e_bar)) + 1.0;
  const double s2 = scale * scale * (g.gram().max_magnitude() + 1.0);
  if (b.spacelike.size() + 2 != g.dim() || b.spacelike_norms.size() != b.spacelike.size()) return false;
  if (!is_zero(g.inner(b.e, b.e), s2) || !is_zero(g.inner(b.e_bar, b.e_bar), s2)) return false;
  if (!is_zero(g.inner(b.e, b.e_bar) - T(1), s2)) return false;
  for (std::size_t i = 0; i < b.spacelike.size(); ++i) {
    const auto& f = b.spacelike[i];
    const double fs = (max_magnitude(f) + 1.0) * scale * (g.gram().max_magnitude() + 1.0);
    if (!is_zero(g.inner(f, b.e), fs) || !is_zero(g.inner(f, b.e_bar), fs)) return false;
    if (sign(b.spacelike_norms[i]) <= 0) return false;
    for (std::size_t j = 0; j < b.spacelike.size(); ++j) {
      const T expected = i == j ? b.spacelike_norms[i] : T(0);
      if (!is_zero(g.inner(f, b.spacelike[j]) - expected, fs * (max_magnitude(b.spacelike[j]) + 1.0))) {
        return false;
      }
    }
  }
  return true;
}

namespace {

template <typename T>
void require_null_lorentzian(const Vector<T>& e, const MetricTensor<T>& g) {
  if (e.size() != g.dim()) throw Error(ErrorKind::shape_mismatch, "vector and metric dimensions differ");
  if (!g.signature().is_lorentzian()) throw Error(ErrorKind::not_lorentzian, "metric is not Lorentzian");
  if (is_zero_vector(e) || !is_isotropic(e, g)) {
    throw Error(ErrorKind::not_isotropic, "vector is not isotropic");
  }
}

/// Orthogonal (orthonormal when possible) basis of a block modulo e.
template <typename T>
void append_block(const Vector<T>& e, const MetricTensor<T>& g, const Subspace<T>& block,
                  WittBasis<T>& out) {
  const std::size_t n = g.dim();
  if (!block.contains(e)) throw Error(ErrorKind::shape_mismatch, "block does not contain e");
  for (const auto& v : block.basis()) {
    if (!is_zero(g.inner(e, v), (max_magnitude(v) + 1.0) * (max_magnitude(e) + 1.0))) {
      throw Error(ErrorKind::shape_mismatch, "block is not contained in e-perp");
    }
  }
  std::vector<Vector<T>> family{e};
  family.insert(family.end(), block.basis().begin(), block.basis().end());
  auto independent = independent_subset(family, n);
  independent.erase(independent.begin());
  if (independent.empty()) return;

  const auto sub = Subspace<T>::span(n, independent);
  const auto cd = congruence_diagonalize(gram_matrix(g, sub));
  for (std::size_t k = 0; k < independent.size(); ++k) {
    Vector<T> w(n, T(0));
    for (std::size_t i = 0; i < independent.size(); ++i) axpy(w, cd.basis(i, k), independent[i]);
    T norm = cd.diagonal[k];
    if (sign(norm) <= 0) throw Error(ErrorKind::not_lorentzian, "e-perp modulo e is not positive definite");
    if constexpr (is_exact_v<T>) {
      Rational root;
      if (rational_sqrt(norm, root)) {
        w = scaled(w, T(1 / root));
        norm = T(1);
      }
    } else {
      w = scaled(w, 1.0 / std::sqrt(norm));
      norm = 1.0;
    }
    out.spacelike.push_back(std::move(w));
    out.spacelike_norms.push_back(norm);
  }
}

}  // namespace

template <typename T>
WittBasis<T> complete_witt_basis_adapted(const Vector<T>& e, const MetricTensor<T>& g,
                                         const std::vector<Subspace<T>>& blocks) {
  require_null_lorentzian(e, g);
  const std::size_t n = g.dim();
  WittBasis<T> out;
  out.e = e;
  for (const auto& block : blocks) append_block(e, g, block, out);
  if (out.spacelike.size() + 2 != n) {
    throw Error(ErrorKind::shape_mismatch, "blocks do not span e-perp");
  }

  // Any v with <e,v> != 0, then ē = v/<e,v> - <v,v>/(2<e,v>²) e.
  std::size_t pick = n;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const T c = g.inner(e, unit_vector<T>(n, i));
    if (is_zero(c, max_magnitude(e) * g.gram().max_magnitude())) continue;
    if constexpr (is_exact_v<T>) {
      pick = i;
      break;
    } else if (magnitude(c) > best) {
      best = magnitude(c);
      pick = i;
    }
  }
  const Vector<T> v = unit_vector<T>(n, pick);
  const T ev = g.inner(e, v);
  Vector<T> e_bar = scaled(v, T(T(1) / ev));
  axpy(e_bar, T(-g.inner(v, v) / (T(2) * ev * ev)), e);
  for (std::size_t k = 0; k < out.spacelike.size(); ++k) {
    const auto& f = out.spacelike[k];
    axpy(e_bar, T(-g.inner(e_bar, f) / out.spacelike_norms[k]), f);
  }
  axpy(e_bar, T(-g.inner(e_bar, e_bar) / T(2)), e);
  out.e_bar = std::move(e_bar);
  return out;
}

template <typename T>
WittBasis<T> complete_witt_basis(const Vector<T>& e, const MetricTensor<T>& g) {
  require_null_lorentzian(e, g);
  const auto line = Subspace<T>::span(g.dim(), {e});
  return complete_witt_basis_adapted(e, g, {orthogonal_complement(line, g)});
}

template <typename T>
Matrix<T> gram_matrix(const MetricTensor<T>& g, const Subspace<T>& s) {
  const Matrix<T> b = s.basis_matrix();
  return b.transpose() * g.gram() * b;
}

template <typename T>
std::optional<MetricTensor<T>> restrict_metric(const MetricTensor<T>& g, const Subspace<T>& s) {
  Matrix<T> gram = gram_matrix(g, s);
  if (rank(gram) < s.dim()) return std::nullopt;
  return MetricTensor<T>(std::move(gram));
}

template <typename T>
Subspace<T> orthogonal_complement(const Subspace<T>& s, const MetricTensor<T>& g) {
  if (s.is_zero()) return Subspace<T>::whole(g.dim());
  const Matrix<T> a = s.basis_matrix().transpose() * g.gram();
  return Subspace<T>::span(g.dim(), kernel(a));
}

template <typename T>
Subspace<T> radical(const Subspace<T>& s, const MetricTensor<T>& g) {
  if (s.is_zero()) return s;
  const Matrix<T> b = s.basis_matrix();
  std::vector<Vector<T>> vecs;
  for (const auto& x : kernel(gram_matrix(g, s))) vecs.push_back(b * x);
  return Subspace<T>::span(g.dim(), vecs);
}

template <typename T>
bool is_isotropic(const Vector<T>& e, const MetricTensor<T>& g) {
  const T q = g.inner(e, e);
  if constexpr (is_exact_v<T>) {
    return sgn(q) == 0;
  } else {
    const double norm2 = dot(e, e);
    return std::fabs(q) < float_tolerance() * norm2 * std::max(1.0, g.gram().max_magnitude());
  }
}

template <typename T>
std::optional<Vector<T>> find_timelike(const Subspace<T>& s, const MetricTensor<T>& g) {
  if (s.is_zero()) return std::nullopt;
  const auto cd = congruence_diagonalize(gram_matrix(g, s));
  const Matrix<T> b = s.basis_matrix();
  for (std::size_t k = 0; k < cd.diagonal.size(); ++k) {
    if (sign(cd.diagonal[k]) < 0) return b * cd.basis.column(k);
  }
  return std::nullopt;
}

#define LORLIE_INSTANTIATE(T)                                                                   \
  template CongruenceDiagonalization<T> congruence_diagonalize(const Matrix<T>&);              \
  template Signature signature(const Matrix<T>&);                                               \
  template class MetricTensor<T>;                                                               \
  template struct WittBasis<T>;                                                                 \
  template Matrix<T> metric_adjoint(const Matrix<T>&, const MetricTensor<T>&);                 \
  template bool is_skew_symmetric(const Matrix<T>&, const MetricTensor<T>&);                   \
  template bool check_witt_basis(const WittBasis<T>&, const MetricTensor<T>&);                 \
  template WittBasis<T> complete_witt_basis(const Vector<T>&, const MetricTensor<T>&);         \
  template WittBasis<T> complete_witt_basis_adapted(const Vector<T>&, const MetricTensor<T>&,  \
                                                    const std::vector<Subspace<T>>&);          \
  template Matrix<T> gram_matrix(const MetricTensor<T>&, const Subspace<T>&);                  \
  template std::optional<MetricTensor<T>> restrict_metric(const MetricTensor<T>&,              \
                                                          const Subspace<T>&);                 \
  template Subspace<T> orthogonal_complement(const Subspace<T>&, const MetricTensor<T>&);      \
  template Subspace<T> radical(const Subspace<T>&, const MetricTensor<T>&);                    \
  template bool is_isotropic(const Vector<T>&, const MetricTensor<T>&);                        \
  template std::optional<Vector<T>> find_timelike(const Subspace<T>&, const MetricTensor<T>&);

LORLIE_INSTANTIATE(Rational)
LORLIE_INSTANTIATE(double)

#undef LORLIE_INSTANTIATE

}  // namespace lorlie
