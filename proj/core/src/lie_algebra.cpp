#include "lorlie/lie_algebra.hpp"

#include <functional>

#include "lorlie/polynomial.hpp"

namespace lorlie {

const char* to_string(Decision d) noexcept {
  switch (d) {
    case Decision::no: return "no";
    case Decision::yes: return "yes";
    case Decision::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

template <typename T>
LieAlgebra<T>::LieAlgebra(std::size_t n, std::vector<T> constants) : n_(n), c_(std::move(constants)) {
  init(true);
}

template <typename T>
LieAlgebra<T>::LieAlgebra(Unchecked, std::size_t n, std::vector<T> constants)
    : n_(n), c_(std::move(constants)) {
  init(false);
}

template <typename T>
void LieAlgebra<T>::init(bool check_jacobi) {
  if (c_.size() != n_ * n_ * n_) throw Error(ErrorKind::shape_mismatch, "structure tensor has wrong size");
  double scale = 0.0;
  for (const auto& x : c_) scale = std::max(scale, magnitude(x));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        if (!is_zero(T(constant(i, j, k) + constant(j, i, k)), scale)) {
          throw Error(ErrorKind::shape_mismatch, "structure constants are not antisymmetric");
        }
      }
  ad_.assign(n_, Matrix<T>(n_, n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) ad_[i](k, j) = constant(i, j, k);
  if (check_jacobi) {
    const auto d = jacobi_defect();
    if (!d.vanishes) {
      throw Error(ErrorKind::not_a_lie_algebra,
                  "Jacobi identity fails on (e" + std::to_string(d.i + 1) + ", e" + std::to_string(d.j + 1) +
                      ", e" + std::to_string(d.k + 1) + ")");
    }
  }
}

template <typename T>
LieAlgebra<T> LieAlgebra<T>::from_brackets(std::size_t n, const std::vector<BracketEntry>& brackets) {
  auto u = from_brackets(Unchecked{}, n, brackets);
  return LieAlgebra(n, u.c_);
}

template <typename T>
LieAlgebra<T> LieAlgebra<T>::from_brackets(Unchecked, std::size_t n, const std::vector<BracketEntry>& brackets) {
  std::vector<T> c(n * n * n, T(0));
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n || b.i == b.j || b.coeffs.size() != n) {
      throw Error(ErrorKind::shape_mismatch, "bracket entry out of range");
    }
    for (std::size_t k = 0; k < n; ++k) {
      c[(b.i * n + b.j) * n + k] = b.coeffs[k];
      c[(b.j * n + b.i) * n + k] = -b.coeffs[k];
    }
  }
  return LieAlgebra(Unchecked{}, n, std::move(c));
}

template <typename T>
Vector<T> LieAlgebra<T>::bracket(std::size_t i, std::size_t j) const {
  return ad_[i].column(j);
}

template <typename T>
Vector<T> LieAlgebra<T>::bracket(const Vector<T>& u, const Vector<T>& v) const {
  if (u.size() != n_ || v.size() != n_) throw Error(ErrorKind::shape_mismatch, "vector dimension");
  Vector<T> out(n_, T(0));
  for (std::size_t i = 0; i < n_; ++i) {
    if (is_zero(u[i]) && is_exact_v<T>) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_zero(v[j]) && is_exact_v<T>) continue;
      const T uv = u[i] * v[j];
      for (std::size_t k = 0; k < n_; ++k) out[k] += uv * constant(i, j, k);
    }
  }
  return out;
}

template <typename T>
Matrix<T> LieAlgebra<T>::ad(const Vector<T>& u) const {
  if (u.size() != n_) throw Error(ErrorKind::shape_mismatch, "vector dimension");
  Matrix<T> m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (is_zero(u[i]) && is_exact_v<T>) continue;
    m += ad_[i] * u[i];
  }
  return m;
}

template <typename T>
JacobiDefect<T> LieAlgebra<T>::jacobi_defect() const {
  JacobiDefect<T> out;
  double scale = 0.0;
  for (const auto& x : c_) scale = std::max(scale, magnitude(x));
  // [[a,b],c] = -ad_c [a,b]
  auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
    return ad_[c] * bracket(a, b);
  };
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      for (std::size_t k = j + 1; k < n_; ++k) {
        Vector<T> s = add(add(term(i, j, k), term(j, k, i)), term(k, i, j));
        for (auto& x : s) x = -x;
        const double m = max_magnitude(s);
        if (m > out.norm || (out.defect.empty() && m > 0.0)) {
          out.norm = m;
          out.i = i;
          out.j = j;
          out.k = k;
          out.defect = s;
        }
      }
  if (out.defect.empty()) out.defect.assign(n_, T(0));
  if constexpr (is_exact_v<T>) {
    out.vanishes = is_zero_vector(out.defect);
  } else {
    out.vanishes = is_zero(out.norm, scale * scale);
  }
  return out;
}

template <typename T>
Matrix<T> killing_form(const LieAlgebra<T>& L) {
  const std::size_t n = L.dim();
  Matrix<T> b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      T t(0);
      const auto& a = L.ad(i);
      const auto& c = L.ad(j);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) t += a(p, q) * c(q, p);
      b(i, j) = t;
      b(j, i) = t;
    }
  return b;
}

template <typename T>
Vector<T> ad_traces(const LieAlgebra<T>& L) {
  Vector<T> t(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i) t[i] = L.ad(i).trace();
  return t;
}

template <typename T>
Subspace<T> bracket_span(const LieAlgebra<T>& L, const Subspace<T>& a, const Subspace<T>& b) {
  std::vector<Vector<T>> vecs;
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) vecs.push_back(L.bracket(u, v));
  return Subspace<T>::span(L.dim(), vecs);
}

template <typename T>
Subspace<T> derived_ideal(const LieAlgebra<T>& L) {
  std::vector<Vector<T>> vecs;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) vecs.push_back(L.bracket(i, j));
  return Subspace<T>::span(L.dim(), vecs);
}

template <typename T>
Subspace<T> center(const LieAlgebra<T>& L) {
  const std::size_t n = L.dim();
  if (n == 0) return Subspace<T>(0);
  Matrix<T> stacked(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(i * n + r, c) = L.ad(i)(r, c);
  return Subspace<T>::span(n, kernel(stacked));
}

template <typename T>
bool is_ideal(const LieAlgebra<T>& L, const Subspace<T>& s) {
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (const auto& v : s.basis())
      if (!s.contains(L.ad(i) * v)) return false;
  return true;
}

template <typename T>
std::vector<Subspace<T>> derived_series(const LieAlgebra<T>& L) {
  std::vector<Subspace<T>> out{Subspace<T>::whole(L.dim())};
  while (!out.back().is_zero()) {
    auto next = bracket_span(L, out.back(), out.back());
    if (next.dim() == out.back().dim()) break;
    out.push_back(std::move(next));
  }
  return out;
}

template <typename T>
std::vector<Subspace<T>> lower_central_series(const LieAlgebra<T>& L) {
  const auto g = Subspace<T>::whole(L.dim());
  std::vector<Subspace<T>> out{g};
  while (!out.back().is_zero()) {
    auto next = bracket_span(L, g, out.back());
    if (next.dim() == out.back().dim()) break;
    out.push_back(std::move(next));
  }
  return out;
}

template <typename T>
bool is_solvable(const LieAlgebra<T>& L) {
  return derived_series(L).back().is_zero();
}

template <typename T>
bool is_nilpotent(const LieAlgebra<T>& L) {
  return lower_central_series(L).back().is_zero();
}

template <typename T>
bool is_unimodular(const LieAlgebra<T>& L) {
  double scale = 0.0;
  for (const auto& x : L.constants()) scale = std::max(scale, magnitude(x));
  for (const auto& t : ad_traces(L))
    if (!is_zero(t, scale)) return false;
  return true;
}

template <typename T>
bool is_abelian(const LieAlgebra<T>& L) {
  double scale = 0.0;
  for (const auto& x : L.constants()) scale = std::max(scale, magnitude(x));
  if constexpr (is_exact_v<T>) {
    return scale == 0.0 && std::all_of(L.constants().begin(), L.constants().end(),
                                       [](const T& x) { return is_zero(x); });
  } else {
    return scale <= float_tolerance();
  }
}

template <typename T>
bool is_derivation(const LieAlgebra<T>& L, const Matrix<T>& d) {
  const std::size_t n = L.dim();
  if (d.rows() != n || d.cols() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vector<T> lhs = d * L.bracket(i, j);
      const Vector<T> rhs = add(L.bracket(d.column(i), unit_vector<T>(n, j)),
                                L.bracket(unit_vector<T>(n, i), d.column(j)));
      const Vector<T> diff = subtract(lhs, rhs);
      const double scale = (d.max_magnitude() + 1.0) * (max_magnitude(L.bracket(i, j)) + 1.0);
      if (!is_zero_vector(diff, scale)) return false;
    }
  return true;
}

template <typename T>
std::vector<Matrix<T>> derivation_space(const LieAlgebra<T>& L) {
  const std::size_t n = L.dim();
  // Unknown D(a, b) at index a * n + b; D e_b = sum_a D(a, b) e_a.
  std::vector<Vector<T>> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector<T> row(n * n, T(0));
        bool nonzero = false;
        for (std::size_t m = 0; m < n; ++m) {
          const T& c = L.constant(i, j, m);
          if (!is_zero(c)) {
            row[k * n + m] += c;
            nonzero = true;
          }
        }
        for (std::size_t a = 0; a < n; ++a) {
          const T& c1 = L.constant(a, j, k);
          if (!is_zero(c1)) {
            row[a * n + i] -= c1;
            nonzero = true;
          }
          const T& c2 = L.constant(i, a, k);
          if (!is_zero(c2)) {
            row[a * n + j] -= c2;
            nonzero = true;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
  std::vector<Vector<T>> sols;
  if (rows.empty()) {
    for (std::size_t v = 0; v < n * n; ++v) sols.push_back(unit_vector<T>(n * n, v));
  } else {
    Matrix<T> a(rows.size(), n * n);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < n * n; ++c) a(r, c) = rows[r][c];
    sols = kernel(a);
  }
  std::vector<Matrix<T>> out;
  for (const auto& s : sols) {
    Matrix<T> d(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) d(a, b) = s[a * n + b];
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

/// Matrix of an invariant map a on the column space of w, in w's coordinates.
Matrix<Rational> restrict_to(const Matrix<Rational>& a, const Matrix<Rational>& w) {
  const std::size_t k = w.cols();
  Matrix<Rational> m(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto x = solve(w, a * w.column(j));
    if (!x) throw Error(ErrorKind::cross_check_mismatch, "subspace is not invariant");
    m.set_column(j, *x);
  }
  return m;
}

/// Common eigenvector of commuting maps maps[idx..] inside the column space
/// of w, using rational eigenvalues only.
std::optional<Vector<Rational>> common_eigenvector(const std::vector<Matrix<Rational>>& maps,
                                                   const Matrix<Rational>& w, std::size_t idx) {
  if (idx == maps.size()) return w.column(0);
  const Matrix<Rational> m = restrict_to(maps[idx], w);
  const std::size_t k = m.rows();
  if (is_zero_matrix(m - Matrix<Rational>::identity(k) * m(0, 0))) {
    return common_eigenvector(maps, w, idx + 1);
  }
  for (const auto& lambda : rational_roots(characteristic_polynomial(m))) {
    const auto ker = kernel(m - Matrix<Rational>::identity(k) * lambda);
    if (ker.empty()) continue;
    Matrix<Rational> next(w.rows(), ker.size());
    for (std::size_t c = 0; c < ker.size(); ++c) next.set_column(c, w * ker[c]);
    if (auto v = common_eigenvector(maps, next, idx + 1)) return v;
  }
  return std::nullopt;
}

}  // namespace

template <typename T>
CompleteSolvability<T> is_completely_solvable(const LieAlgebra<T>& L) {
  CompleteSolvability<T> out;
  if constexpr (!is_exact_v<T>) {
    out.decision = Decision::indeterminate;
    return out;
  } else {
    const std::size_t n = L.dim();
    if (!is_solvable(L)) {
      out.decision = Decision::no;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_real_rooted(characteristic_polynomial(L.ad(i)))) {
        out.decision = Decision::no;
        return out;
      }
    }
    out.decision = Decision::yes;

    const auto derived = derived_ideal(L);
    Subspace<T> ideal(n);
    while (ideal.dim() < n) {
      const auto comp = ideal.complement_basis();
      const std::size_t m = comp.size();
      const std::size_t d = ideal.dim();
      auto cols = ideal.basis();
      cols.insert(cols.end(), comp.begin(), comp.end());
      const Matrix<T> b = Matrix<T>::from_columns(cols, n);
      const Matrix<T> binv = inverse(b);
      auto quotient_action = [&](const Matrix<T>& ad) {
        const Matrix<T> full = binv * ad * b;
        Matrix<T> q(m, m);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c) q(r, c) = full(d + r, d + c);
        return q;
      };
      std::vector<Matrix<T>> actions;
      for (std::size_t i = 0; i < n; ++i) actions.push_back(quotient_action(L.ad(i)));

      // Common eigenvectors are killed by [g,g], and on that joint kernel
      // the actions commute.
      std::vector<Vector<T>> w0;
      if (derived.is_zero()) {
        for (std::size_t i = 0; i < m; ++i) w0.push_back(unit_vector<T>(m, i));
      } else {
        Matrix<T> stacked(derived.dim() * m, m);
        for (std::size_t y = 0; y < derived.dim(); ++y) {
          const Matrix<T> q = quotient_action(L.ad(derived.basis()[y]));
          for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) stacked(y * m + r, c) = q(r, c);
        }
        w0 = kernel(stacked);
      }
      if (w0.empty()) break;
      const auto v = common_eigenvector(actions, Matrix<T>::from_columns(w0, m), 0);
      if (!v) break;
      Vector<T> lifted(n, T(0));
      for (std::size_t c = 0; c < m; ++c) axpy(lifted, (*v)[c], comp[c]);
      ideal = ideal.sum(Subspace<T>::span(n, {lifted}));
      out.flag.push_back(ideal);
    }
    out.certificate_complete = ideal.dim() == n;
    return out;
  }
}

template <typename T>
ClassificationFlags<T> classify(const LieAlgebra<T>& L) {
  ClassificationFlags<T> f;
  f.abelian = is_abelian(L);
  const auto ds = derived_series(L);
  const auto lc = lower_central_series(L);
  f.solvable = ds.back().is_zero();
  f.nilpotent = lc.back().is_zero();
  if (f.solvable) f.derived_series_length = ds.size() - 1;
  if (f.nilpotent) f.lower_central_length = lc.size() - 1;
  f.unimodular = is_unimodular(L);
  f.flag = is_completely_solvable(L);
  f.completely_solvable = f.flag.decision;
  return f;
}

template <typename T>
LieAlgebra<T> change_basis(const LieAlgebra<T>& L, const Matrix<T>& p) {
  const std::size_t n = L.dim();
  if (p.rows() != n || p.cols() != n) throw Error(ErrorKind::shape_mismatch, "basis matrix shape");
  const auto pinv = try_inverse(p);
  if (!pinv) throw Error(ErrorKind::singular_basis, "basis vectors are dependent");
  std::vector<T> c(n * n * n, T(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Vector<T> coords = *pinv * L.bracket(p.column(a), p.column(b));
      for (std::size_t k = 0; k < n; ++k) {
        c[(a * n + b) * n + k] = coords[k];
        c[(b * n + a) * n + k] = -coords[k];
      }
    }
  return LieAlgebra<T>(typename LieAlgebra<T>::Unchecked{}, n, std::move(c));
}

#define LORLIE_INSTANTIATE(T)                                                                      \
  template class LieAlgebra<T>;                                                                    \
  template Matrix<T> killing_form(const LieAlgebra<T>&);                                           \
  template Vector<T> ad_traces(const LieAlgebra<T>&);                                              \
  template Subspace<T> bracket_span(const LieAlgebra<T>&, const Subspace<T>&, const Subspace<T>&); \
  template Subspace<T> derived_ideal(const LieAlgebra<T>&);                                        \
  template Subspace<T> center(const LieAlgebra<T>&);                                               \
  template bool is_ideal(const LieAlgebra<T>&, const Subspace<T>&);                                \
  template std::vector<Subspace<T>> derived_series(const LieAlgebra<T>&);                          \
  template std::vector<Subspace<T>> lower_central_series(const LieAlgebra<T>&);                    \
  template bool is_solvable(const LieAlgebra<T>&);                                                 \
  template bool is_nilpotent(const LieAlgebra<T>&);                                                \
  template bool is_unimodular(const LieAlgebra<T>&);                                               \
  template bool is_abelian(const LieAlgebra<T>&);                                                  \
  template bool is_derivation(const LieAlgebra<T>&, const Matrix<T>&);                             \
  template std::vector<Matrix<T>> derivation_space(const LieAlgebra<T>&);                          \
  template CompleteSolvability<T> is_completely_solvable(const LieAlgebra<T>&);                    \
  template ClassificationFlags<T> classify(const LieAlgebra<T>&);                                  \
  template LieAlgebra<T> change_basis(const LieAlgebra<T>&, const Matrix<T>&);

LORLIE_INSTANTIATE(Rational)
LORLIE_INSTANTIATE(double)

#undef LORLIE_INSTANTIATE

}  // namespace lorlie
