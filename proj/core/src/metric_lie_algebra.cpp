#include "lorlie/metric_lie_algebra.hpp"

#include <cmath>

namespace lorlie {

template <typename T>
PseudoEuclideanLieAlgebra<T>::PseudoEuclideanLieAlgebra(LieAlgebra<T> algebra, MetricTensor<T> metric)
    : algebra_(std::move(algebra)), metric_(std::move(metric)) {
  if (algebra_.dim() != metric_.dim()) {
    throw Error(ErrorKind::shape_mismatch, "algebra and metric dimensions differ");
  }
}

namespace {

template <typename T>
T trace_of_product(const Matrix<T>& a, const Matrix<T>& b) {
  T t(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

template <typename T>
double scale_of(const PseudoEuclideanLieAlgebra<T>& p) {
  double s = p.metric().gram().max_magnitude() + p.metric().inverse().max_magnitude();
  for (const auto& x : p.algebra().constants()) s = std::max(s, magnitude(x));
  return s * s * s + 1.0;
}

template <typename T>
void finish_report(const PseudoEuclideanLieAlgebra<T>& p, CurvatureReport<T>& r) {
  const double scale = scale_of(p);
  r.mean_curvature = mean_curvature(p);
  r.ricci_flat = is_zero_matrix(r.ricci, scale);
  r.einstein_lambda = einstein_lambda(r.ricci);
  r.einstein = r.einstein_lambda.has_value();
}

}  // namespace

template <typename T>
Vector<T> levi_civita(const PseudoEuclideanLieAlgebra<T>& p, const Vector<T>& u, const Vector<T>& v) {
  const auto& L = p.algebra();
  const auto& g = p.metric();
  const std::size_t n = p.dim();
  const Vector<T> uv = g.gram() * L.bracket(u, v);
  const Vector<T> gu = g.gram() * u;
  const Vector<T> gv = g.gram() * v;
  Vector<T> rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    // <[e_k,u],v> + <[e_k,v],u>
    rhs[k] = uv[k] + dot(L.ad(k) * u, gv) + dot(L.ad(k) * v, gu);
  }
  return scaled(g.inverse() * rhs, T(T(1) / T(2)));
}

template <typename T>
std::vector<Matrix<T>> levi_civita_operators(const PseudoEuclideanLieAlgebra<T>& p) {
  const auto& L = p.algebra();
  const auto& G = p.metric().gram();
  const std::size_t n = p.dim();
  // low(i, j, k) = <[e_i, e_j], e_k>
  std::vector<T> low(n * n * n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        const T& c = L.constant(i, j, m);
        if (is_zero(c) && is_exact_v<T>) continue;
        for (std::size_t k = 0; k < n; ++k) low[(i * n + j) * n + k] += c * G(m, k);
      }
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const T& { return low[(i * n + j) * n + k]; };
  const Matrix<T> half_inv = p.metric().inverse() * T(T(1) / T(2));
  std::vector<Matrix<T>> ops(n, Matrix<T>(n, n));
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<T> rhs(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) rhs(k, j) = at(i, j, k) + at(k, i, j) + at(k, j, i);
    ops[i] = half_inv * rhs;
  }
  return ops;
}

template <typename T>
Matrix<T> levi_civita_operator(const PseudoEuclideanLieAlgebra<T>& p, const Vector<T>& u) {
  const auto ops = levi_civita_operators(p);
  Matrix<T> m(p.dim(), p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) m += ops[i] * u[i];
  return m;
}

template <typename T>
Matrix<T> curvature(const PseudoEuclideanLieAlgebra<T>& p, const Vector<T>& u, const Vector<T>& v) {
  const auto ops = levi_civita_operators(p);
  auto op = [&](const Vector<T>& x) {
    Matrix<T> m(p.dim(), p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) m += ops[i] * x[i];
    return m;
  };
  return op(p.algebra().bracket(u, v)) - commutator(op(u), op(v));
}

namespace {

/// K(e_i, e_k) for all pairs, row-major.
template <typename T>
std::vector<Matrix<T>> basis_curvatures(const PseudoEuclideanLieAlgebra<T>& p,
                                        const std::vector<Matrix<T>>& ops) {
  const auto& L = p.algebra();
  const std::size_t n = p.dim();
  std::vector<Matrix<T>> out(n * n, Matrix<T>(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      Matrix<T> m = -commutator(ops[i], ops[k]);
      for (std::size_t c = 0; c < n; ++c) {
        const T& coeff = L.constant(i, k, c);
        if (!is_zero(coeff) || !is_exact_v<T>) m += ops[c] * coeff;
      }
      out[k * n + i] = -m;
      out[i * n + k] = std::move(m);
    }
  return out;
}

}  // namespace

template <typename T>
bool is_flat(const PseudoEuclideanLieAlgebra<T>& p) {
  const double scale = scale_of(p);
  for (const auto& k : basis_curvatures(p, levi_civita_operators(p)))
    if (!is_zero_matrix(k, scale)) return false;
  return true;
}

template <typename T>
CurvatureReport<T> ricci_direct(const PseudoEuclideanLieAlgebra<T>& p) {
  const std::size_t n = p.dim();
  const auto curv = basis_curvatures(p, levi_civita_operators(p));
  const double scale = scale_of(p);
  CurvatureReport<T> r;
  r.ric = Matrix<T>(n, n);
  r.flat = true;
  for (const auto& k : curv)
    if (!is_zero_matrix(k, scale)) r.flat = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T s(0);
      for (std::size_t k = 0; k < n; ++k) s += curv[i * n + k](k, j);
      r.ric(i, j) = s;
    }
  r.ricci = p.metric().inverse() * r.ric;
  finish_report(p, r);
  return r;
}

template <typename T>
Vector<T> mean_curvature(const PseudoEuclideanLieAlgebra<T>& p) {
  return p.metric().inverse() * ad_traces(p.algebra());
}

template <typename T>
Matrix<T> j_map(const PseudoEuclideanLieAlgebra<T>& p, const Vector<T>& u) {
  const std::size_t n = p.dim();
  Matrix<T> j(n, n);
  for (std::size_t c = 0; c < n; ++c) j.set_column(c, metric_adjoint(p.algebra().ad(c), p.metric()) * u);
  return j;
}

namespace {

template <typename T>
std::vector<Matrix<T>> adjoint_ads(const PseudoEuclideanLieAlgebra<T>& p) {
  std::vector<Matrix<T>> out;
  for (std::size_t i = 0; i < p.dim(); ++i) out.push_back(metric_adjoint(p.algebra().ad(i), p.metric()));
  return out;
}

/// J_{e_i}: column c is ad_{e_c}* e_i.
template <typename T>
std::vector<Matrix<T>> basis_j_maps(const std::vector<Matrix<T>>& ad_star) {
  const std::size_t n = ad_star.size();
  std::vector<Matrix<T>> out(n, Matrix<T>(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) out[i](r, c) = ad_star[c](r, i);
  return out;
}

template <typename T>
CurvatureReport<T> report_from_ricci_operator(const PseudoEuclideanLieAlgebra<T>& p, Matrix<T> ricci) {
  CurvatureReport<T> r;
  r.ric = p.metric().gram() * ricci;
  r.ricci = std::move(ricci);
  r.flat = is_flat(p);
  finish_report(p, r);
  return r;
}

}  // namespace

template <typename T>
CurvatureReport<T> ricci_from_r_operators(const PseudoEuclideanLieAlgebra<T>& p) {
  const std::size_t n = p.dim();
  const auto& L = p.algebra();
  const auto ad_star = adjoint_ads(p);
  const auto js = basis_j_maps(ad_star);
  const T half = T(1) / T(2);
  std::vector<Matrix<T>> r_ops;
  for (std::size_t i = 0; i < n; ++i) r_ops.push_back((L.ad(i) + ad_star[i] + js[i]) * T(-half));
  const Vector<T> h = mean_curvature(p);
  const Matrix<T> ad_h = L.ad(h);
  const Matrix<T> g_ad_h = p.metric().gram() * ad_h;  // (i, j) -> <e_i, ad_H e_j>
  Matrix<T> ric(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      ric(i, j) = -trace_of_product(r_ops[i], r_ops[j]) - half * (g_ad_h(j, i) + g_ad_h(i, j));
  CurvatureReport<T> r;
  r.ricci = p.metric().inverse() * ric;
  r.ric = std::move(ric);
  r.flat = is_flat(p);
  finish_report(p, r);
  return r;
}

template <typename T>
Operators<T> operators(const PseudoEuclideanLieAlgebra<T>& p) {
  const std::size_t n = p.dim();
  const auto& L = p.algebra();
  const auto ad_star = adjoint_ads(p);
  const auto js = basis_j_maps(ad_star);
  Matrix<T> m1(n, n), m2(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m1(i, j) = trace_of_product(L.ad(i), ad_star[j]);
      if (j >= i) {
        m2(i, j) = -trace_of_product(js[i], js[j]);
        m2(j, i) = m2(i, j);
      }
    }
  const auto& ginv = p.metric().inverse();
  return {ginv * killing_form(L), ginv * m1, ginv * m2, mean_curvature(p)};
}

template <typename T>
StructureEndos<T> structure_endos(const PseudoEuclideanLieAlgebra<T>& p, const Matrix<T>& basis) {
  const std::size_t n = p.dim();
  if (basis.rows() != n || basis.cols() != n) throw Error(ErrorKind::shape_mismatch, "basis shape");
  const auto pinv = try_inverse(basis);
  if (!pinv) throw Error(ErrorKind::singular_basis, "basis vectors are dependent");
  std::vector<Matrix<T>> omega(n, Matrix<T>(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Vector<T> coords = *pinv * p.algebra().bracket(a, b);
      for (std::size_t i = 0; i < n; ++i) {
        omega[i](a, b) = coords[i];
        omega[i](b, a) = -coords[i];
      }
    }
  StructureEndos<T> out{basis, {}};
  for (const auto& w : omega) out.S.push_back(p.metric().inverse() * w.transpose());
  return out;
}

template <typename T>
Operators<T> operators_from_structure_endos(const PseudoEuclideanLieAlgebra<T>& p,
                                            const StructureEndos<T>& endos) {
  const std::size_t n = p.dim();
  const auto& G = p.metric().gram();
  const Matrix<T> gb = endos.basis.transpose() * G * endos.basis;
  Matrix<T> j1(n, n);
  Matrix<T> t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_zero(gb(i, j)) || !is_exact_v<T>) j1 -= endos.S[i] * endos.S[j] * gb(i, j);
      t(i, j) = trace_of_product(endos.S[i], endos.S[j]);
    }
  Matrix<T> j2 = -(endos.basis * t * endos.basis.transpose() * G);
  return {p.metric().inverse() * killing_form(p.algebra()), std::move(j1), std::move(j2), mean_curvature(p)};
}

template <typename T>
Matrix<T> q_operator(const Operators<T>& ops) {
  return ops.j1 * T(T(-1) / T(2)) + ops.j2 * T(T(1) / T(4));
}

template <typename T>
CurvatureReport<T> ricci_operator_formula(const PseudoEuclideanLieAlgebra<T>& p) {
  const auto ops = operators(p);
  Matrix<T> ric = (ops.b_hat + ops.j1) * T(T(-1) / T(2)) + ops.j2 * T(T(1) / T(4));
  if (!is_unimodular(p.algebra())) {
    const Matrix<T> ad_h = p.algebra().ad(ops.h);
    ric -= (ad_h + metric_adjoint(ad_h, p.metric())) * T(T(1) / T(2));
  }
  return report_from_ricci_operator(p, std::move(ric));
}

template <typename T>
std::optional<T> einstein_lambda(const Matrix<T>& ricci) {
  const std::size_t n = ricci.rows();
  if (n == 0) return T(0);
  const T lambda = ricci.trace() / T(static_cast<double>(n));
  const Matrix<T> diff = ricci - Matrix<T>::identity(n) * lambda;
  if (!is_zero_matrix(diff, ricci.max_magnitude())) return std::nullopt;
  return lambda;
}

template <typename T>
std::optional<T> einstein_check(const PseudoEuclideanLieAlgebra<T>& p) {
  return einstein_lambda(ricci_direct(p).ricci);
}

template <typename T>
TraceIdentityEvaluator<T>::TraceIdentityEvaluator(const PseudoEuclideanLieAlgebra<T>& p)
    : p_(&p), q_(q_operator(operators(p))) {
  const std::size_t n = p.dim();
  const auto cd = congruence_diagonalize(p.metric().gram());
  for (std::size_t i = 0; i < n; ++i) {
    Vector<T> b = cd.basis.column(i);
    const T d = cd.diagonal[i];
    if constexpr (is_exact_v<T>) {
      weight_.push_back(T(1) / d);
    } else {
      b = scaled(b, 1.0 / std::sqrt(std::fabs(d)));
      weight_.push_back(d < 0 ? -1.0 : 1.0);
    }
    basis_.push_back(std::move(b));
  }
  brackets_.assign(n, std::vector<Vector<T>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) brackets_[i][j] = p.algebra().bracket(basis_[i], basis_[j]);
}

template <typename T>
TraceIdentity<T> TraceIdentityEvaluator<T>::operator()(const Matrix<T>& e) const {
  const auto& L = p_->algebra();
  const auto& g = p_->metric();
  const std::size_t n = p_->dim();
  std::vector<Vector<T>> eb;
  for (const auto& b : basis_) eb.push_back(e * b);
  T sum(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vector<T>& bij = brackets_[i][j];
      if (is_zero_vector(bij) && is_exact_v<T>) continue;
      Vector<T> x = e * bij;
      x = subtract(x, L.bracket(eb[i], basis_[j]));
      x = subtract(x, L.bracket(basis_[i], eb[j]));
      // Both orders of (i, j) contribute the same term.
      sum += T(2) * weight_[i] * weight_[j] * g.inner(x, bij);
    }
  return {trace_of_product(q_, e), sum / T(4)};
}

template <typename T>
TraceIdentity<T> trace_q_times(const PseudoEuclideanLieAlgebra<T>& p, const Matrix<T>& e) {
  return TraceIdentityEvaluator<T>(p)(e);
}

template <typename T>
NondegenerateCenterReport<T> verify_nondegenerate_center_prop(const PseudoEuclideanLieAlgebra<T>& p) {
  const auto& L = p.algebra();
  const auto& g = p.metric();
  const std::size_t n = p.dim();
  if (!g.signature().is_lorentzian()) throw HypothesisFailed("metric is Lorentzian");
  if (!is_solvable(L)) throw HypothesisFailed("algebra is solvable");
  if (!is_unimodular(L)) throw HypothesisFailed("algebra is unimodular");
  const auto lambda = einstein_check(p);
  if (!lambda) throw HypothesisFailed("metric is Einstein");
  const auto z = center(L);
  const auto z_metric = restrict_metric(g, z);
  if (!z_metric) throw HypothesisFailed("center is nondegenerate");

  NondegenerateCenterReport<T> report;
  report.lambda = *lambda;
  report.center_lorentzian = !z.is_zero() && z_metric->signature().negative > 0;
  if (!report.center_lorentzian) {
    report.steps.push_back({"center is Euclidean", true});
    return report;
  }

  const double scale = scale_of(p);
  const Vector<T> e = *find_timelike(z, g);
  const T ee = g.inner(e, e);
  const auto perp = orthogonal_complement(Subspace<T>::span(n, {e}), g);
  const std::size_t m = perp.dim();
  Matrix<T> omega(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < m; ++c)
      omega(a, c) = g.inner(L.bracket(perp.basis()[a], perp.basis()[c]), e) / ee;
  const Matrix<T> k = inverse(gram_matrix(g, perp)) * omega.transpose();
  const T quarter = -ee * (k * k).trace() / T(4);
  report.quarter_trace_k2 = quarter;
  report.steps.push_back({"lambda equals c tr(K^2)/4", is_zero(T(*lambda - quarter), scale)});
  report.steps.push_back({"lambda vanishes", is_zero(*lambda, scale)});
  report.steps.push_back({"K vanishes", is_zero_matrix(k, scale)});
  report.steps.push_back({"metric is flat", is_flat(p)});

  const auto b_ideal = Subspace<T>::span(n, {e}).sum(derived_ideal(L));
  const auto a_sub = orthogonal_complement(b_ideal, g);
  const auto is_abelian_subspace = [&](const Subspace<T>& s) {
    for (const auto& u : s.basis())
      for (const auto& v : s.basis())
        if (!is_zero_vector(L.bracket(u, v), scale)) return false;
    return true;
  };
  bool a_closed = true;
  for (const auto& u : a_sub.basis())
    for (const auto& v : a_sub.basis())
      if (!a_sub.contains(L.bracket(u, v))) a_closed = false;
  report.steps.push_back({"b = Re + [g,g] is an abelian ideal", is_ideal(L, b_ideal) && is_abelian_subspace(b_ideal)});
  report.steps.push_back({"a = b-perp is an abelian subalgebra", a_closed && is_abelian_subspace(a_sub)});

  const auto ops = levi_civita_operators(p);
  auto lc = [&](const Vector<T>& u) {
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i) out += ops[i] * u[i];
    return out;
  };
  bool vanishes_on_b = true;
  for (const auto& u : b_ideal.basis())
    if (!is_zero_matrix(lc(u), scale)) vanishes_on_b = false;
  bool ad_on_a = true;
  for (const auto& u : a_sub.basis())
    if (!is_zero_matrix(lc(u) - L.ad(u), scale)) ad_on_a = false;
  report.steps.push_back({"L vanishes on b", vanishes_on_b});
  report.steps.push_back({"L_u = ad_u on a", ad_on_a});
  return report;
}

#define LORLIE_INSTANTIATE(T)                                                                               \
  template class PseudoEuclideanLieAlgebra<T>;                                                              \
  template Vector<T> levi_civita(const PseudoEuclideanLieAlgebra<T>&, const Vector<T>&, const Vector<T>&); \
  template Matrix<T> levi_civita_operator(const PseudoEuclideanLieAlgebra<T>&, const Vector<T>&);          \
  template std::vector<Matrix<T>> levi_civita_operators(const PseudoEuclideanLieAlgebra<T>&);              \
  template Matrix<T> curvature(const PseudoEuclideanLieAlgebra<T>&, const Vector<T>&, const Vector<T>&);   \
  template bool is_flat(const PseudoEuclideanLieAlgebra<T>&);                                               \
  template CurvatureReport<T> ricci_direct(const PseudoEuclideanLieAlgebra<T>&);                            \
  template CurvatureReport<T> ricci_from_r_operators(const PseudoEuclideanLieAlgebra<T>&);                  \
  template CurvatureReport<T> ricci_operator_formula(const PseudoEuclideanLieAlgebra<T>&);                  \
  template Vector<T> mean_curvature(const PseudoEuclideanLieAlgebra<T>&);                                   \
  template StructureEndos<T> structure_endos(const PseudoEuclideanLieAlgebra<T>&, const Matrix<T>&);       \
  template Matrix<T> j_map(const PseudoEuclideanLieAlgebra<T>&, const Vector<T>&);                          \
  template Operators<T> operators(const PseudoEuclideanLieAlgebra<T>&);                                     \
  template Operators<T> operators_from_structure_endos(const PseudoEuclideanLieAlgebra<T>&,                 \
                                                       const StructureEndos<T>&);                           \
  template Matrix<T> q_operator(const Operators<T>&);                                                       \
  template class TraceIdentityEvaluator<T>;                                                                 \
  template TraceIdentity<T> trace_q_times(const PseudoEuclideanLieAlgebra<T>&, const Matrix<T>&);          \
  template std::optional<T> einstein_lambda(const Matrix<T>&);                                              \
  template std::optional<T> einstein_check(const PseudoEuclideanLieAlgebra<T>&);                            \
  template NondegenerateCenterReport<T> verify_nondegenerate_center_prop(const PseudoEuclideanLieAlgebra<T>&);

LORLIE_INSTANTIATE(Rational)
LORLIE_INSTANTIATE(double)

#undef LORLIE_INSTANTIATE

}  // namespace lorlie
