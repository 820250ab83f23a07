#include "lorlie/double_extension.hpp"

namespace lorlie {

const char* to_string(ExtractMode mode) noexcept {
  return mode == ExtractMode::derived_degenerate ? "derived_degenerate" : "center_degenerate";
}

template <typename T>
DoubleExtensionParams<T> abelian_params(const Matrix<T>& g0, Matrix<T> K, Matrix<T> D, T mu, Vector<T> b) {
  PseudoEuclideanLieAlgebra<T> base(LieAlgebra<T>::abelian(g0.rows()), MetricTensor<T>(g0));
  DoubleExtensionParams<T> p{std::move(base), std::move(K), std::move(D), std::move(mu), std::move(b)};
  validate(p);
  return p;
}

template <typename T>
void validate(const DoubleExtensionParams<T>& p) {
  const std::size_t n = p.base_dim();
  if (p.K.rows() != n || p.K.cols() != n || p.D.rows() != n || p.D.cols() != n || p.b.size() != n) {
    throw Error(ErrorKind::shape_mismatch, "parameter shapes do not match the base algebra");
  }
  if (!p.g0.metric().signature().is_euclidean()) {
    throw Error(ErrorKind::not_lorentzian, "base metric must be Euclidean");
  }
  if (!is_skew_symmetric(p.K, p.g0.metric())) {
    throw Error(ErrorKind::shape_mismatch, "K must be skew-symmetric");
  }
}

template <typename T>
PseudoEuclideanLieAlgebra<T> build(const DoubleExtensionParams<T>& p) {
  validate(p);
  const std::size_t n = p.base_dim();
  const std::size_t N = n + 2;
  const std::size_t bar = N - 1;
  const auto& L0 = p.g0.algebra();
  const auto& G0 = p.g0.metric().gram();
  const Matrix<T> omega = p.K.transpose() * G0;  // omega(a, b) = <K f_a, f_b>
  const Vector<T> gb = G0 * p.b;

  std::vector<T> c(N * N * N, T(0));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, const T& v) {
    c[(i * N + j) * N + k] += v;
    c[(j * N + i) * N + k] -= v;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t bb = a + 1; bb < n; ++bb) {
      for (std::size_t k = 0; k < n; ++k) set(1 + a, 1 + bb, 1 + k, L0.constant(a, bb, k));
      set(1 + a, 1 + bb, 0, omega(a, bb));
    }
  set(bar, 0, 0, p.mu);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < n; ++k) set(bar, 1 + a, 1 + k, p.D(k, a));
    set(bar, 1 + a, 0, gb[a]);
  }

  Matrix<T> gram(N, N);
  gram(0, bar) = T(1);
  gram(bar, 0) = T(1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t bb = 0; bb < n; ++bb) gram(1 + a, 1 + bb) = G0(a, bb);
  return PseudoEuclideanLieAlgebra<T>(LieAlgebra<T>(typename LieAlgebra<T>::Unchecked{}, N, std::move(c)),
                                      MetricTensor<T>(std::move(gram)));
}

namespace {

template <typename T>
double param_scale(const DoubleExtensionParams<T>& p) {
  double s = std::max({p.K.max_magnitude(), p.D.max_magnitude(), magnitude(p.mu), max_magnitude(p.b),
                       p.g0.metric().gram().max_magnitude()});
  for (const auto& x : p.g0.algebra().constants()) s = std::max(s, magnitude(x));
  return (s + 1.0) * (s + 1.0) * (s + 1.0);
}

template <typename T>
T trace_of_product(const Matrix<T>& a, const Matrix<T>& b) {
  T t(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

}  // namespace

template <typename T>
AdmissibilityReport<T> admissibility(const DoubleExtensionParams<T>& p) {
  validate(p);
  const std::size_t n = p.base_dim();
  const auto& L0 = p.g0.algebra();
  const double scale = param_scale(p);
  AdmissibilityReport<T> r;
  r.is_derivation = is_derivation(L0, p.D);

  const Matrix<T> omega = p.K.transpose() * p.g0.metric().gram();
  auto w = [&](const Vector<T>& x, const Vector<T>& y) { return dot(x, omega * y); };
  r.is_cocycle = true;
  for (std::size_t i = 0; i < n && r.is_cocycle; ++i)
    for (std::size_t j = i + 1; j < n && r.is_cocycle; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto ei = unit_vector<T>(n, i), ej = unit_vector<T>(n, j), ek = unit_vector<T>(n, k);
        const T d = w(L0.bracket(i, j), ek) + w(L0.bracket(j, k), ei) + w(L0.bracket(k, i), ej);
        if (!is_zero(d, scale)) {
          r.is_cocycle = false;
          break;
        }
      }

  const Matrix<T> d_star = metric_adjoint(p.D, p.g0.metric());
  r.dext0_residual = p.K * p.D + d_star * p.K - p.K * p.mu - j_map(p.g0, p.b);
  r.admissible = r.is_derivation && r.is_cocycle && is_zero_matrix(r.dext0_residual, scale);
  return r;
}

template <typename T>
UnimodularityReport<T> unimodularity(const DoubleExtensionParams<T>& p) {
  const auto built = build(p);
  const std::size_t n = p.base_dim();
  UnimodularityReport<T> r;
  r.h = mean_curvature(built);
  r.expected.assign(n + 2, T(0));
  r.expected[0] = p.mu + p.D.trace();
  const Vector<T> h0 = mean_curvature(p.g0);
  for (std::size_t a = 0; a < n; ++a) r.expected[1 + a] = h0[a];
  r.formula_holds = is_zero_vector(subtract(r.h, r.expected), param_scale(p));
  r.unimodular = is_unimodular(built.algebra());
  return r;
}

template <typename T>
T dext1(const DoubleExtensionParams<T>& p) {
  const Matrix<T> d_star = metric_adjoint(p.D, p.g0.metric());
  const T tr_ad_b = p.g0.algebra().ad(p.b).trace();
  return T(4) * tr_ad_b + T(4) * p.mu * p.D.trace() - T(2) * trace_of_product(p.D, p.D) -
         T(2) * trace_of_product(p.D, d_star) - trace_of_product(p.K, p.K);
}

template <typename T>
Vector<T> dext2(const DoubleExtensionParams<T>& p) {
  const std::size_t n = p.base_dim();
  const auto& L0 = p.g0.algebra();
  const Matrix<T> d_star = metric_adjoint(p.D, p.g0.metric());
  const Matrix<T> sym = p.D + d_star;
  Vector<T> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto u = unit_vector<T>(n, a);
    out[a] = trace_of_product(j_map(p.g0, u), p.K) + T(2) * trace_of_product(sym, L0.ad(a)) +
             T(2) * L0.ad(d_star * u).trace() - T(2) * L0.ad(p.K * u).trace();
  }
  return out;
}

template <typename T>
EinsteinConditionsReport<T> einstein_conditions(const DoubleExtensionParams<T>& p) {
  if (!admissibility(p).admissible) throw Error(ErrorKind::not_admissible, "parameters are not admissible");
  const double scale = param_scale(p);
  EinsteinConditionsReport<T> r;
  r.g0_ricci_flat = ricci_direct(p.g0).ricci_flat;
  r.dext1_residual = dext1(p);
  r.dext2_residuals = dext2(p);
  r.einstein = r.g0_ricci_flat && is_zero(r.dext1_residual, scale) && is_zero_vector(r.dext2_residuals, scale);
  return r;
}

template <typename T>
std::vector<CheckStep> intermediate_identities(const DoubleExtensionParams<T>& p) {
  if (!admissibility(p).admissible) throw Error(ErrorKind::not_admissible, "parameters are not admissible");
  const auto built = build(p);
  const std::size_t n = p.base_dim();
  const std::size_t bar = n + 1;
  const double scale = param_scale(p) * param_scale(p);
  const auto ops = operators(built);
  const auto ric = ricci_direct(built);
  const auto ric0 = ricci_direct(p.g0);
  const T tr_d2 = trace_of_product(p.D, p.D);
  const T tr_k2 = trace_of_product(p.K, p.K);
  const T quarter = T(1) / T(4);
  std::vector<CheckStep> steps;
  steps.push_back({"e-component of B̂(ē) is mu^2 + tr(D^2)", is_zero(T(ops.b_hat(0, bar) - p.mu * p.mu - tr_d2), scale)});
  steps.push_back({"e-component of J₂(ē) is -(2 mu^2 + tr(K^2))",
                   is_zero(T(ops.j2(0, bar) + T(2) * p.mu * p.mu + tr_k2), scale)});
  steps.push_back({"H = (mu + tr D) e + H0", unimodularity(p).formula_holds});
  steps.push_back({"Ric e = 0", is_zero_vector(ric.ricci.column(0), scale)});
  steps.push_back({"<Ric ē, ē> = dext1 / 4", is_zero(T(ric.ric(bar, bar) - quarter * dext1(p)), scale)});
  const Vector<T> d2 = dext2(p);
  bool mixed = true, block = true;
  for (std::size_t a = 0; a < n; ++a) {
    if (!is_zero(T(ric.ric(1 + a, bar) + quarter * d2[a]), scale)) mixed = false;
    for (std::size_t c = 0; c < n; ++c)
      if (!is_zero(T(ric.ric(1 + a, 1 + c) - ric0.ric(a, c)), scale)) block = false;
  }
  steps.push_back({"<Ric u, ē> = -dext2(u) / 4", mixed});
  steps.push_back({"<Ric u, v> = <Ric0 u, v>", block});
  return steps;
}

namespace {

/// An isotropic vector in a nondegenerate Lorentzian subspace, found among
/// rational combinations a w_t + w_s of a diagonalizing basis.
std::optional<Vector<Rational>> rational_isotropic(const Subspace<Rational>& s, const MetricTensor<Rational>& g) {
  const auto cd = congruence_diagonalize(gram_matrix(g, s));
  const Matrix<Rational> b = s.basis_matrix();
  std::optional<std::size_t> t;
  for (std::size_t i = 0; i < cd.diagonal.size(); ++i)
    if (sgn(cd.diagonal[i]) < 0) t = i;
  if (!t) return std::nullopt;
  for (std::size_t i = 0; i < cd.diagonal.size(); ++i) {
    if (sgn(cd.diagonal[i]) <= 0) continue;
    Rational a;
    if (!rational_sqrt(Rational(-cd.diagonal[i] / cd.diagonal[*t]), a)) continue;
    Vector<Rational> v = scaled(cd.basis.column(*t), a);
    v = add(v, cd.basis.column(i));
    return b * v;
  }
  return std::nullopt;
}

}  // namespace

template <typename T>
ExtractionResult<T> extract(const PseudoEuclideanLieAlgebra<T>& p, ExtractMode mode) {
  if constexpr (!is_exact_v<T>) {
    (void)p;
    (void)mode;
    throw Error(ErrorKind::requires_exact_mode, "extract requires exact mode");
  } else {
    const auto& L = p.algebra();
    const auto& g = p.metric();
    const std::size_t N = p.dim();
    if (!g.signature().is_lorentzian()) throw HypothesisFailed("metric is Lorentzian");

    Vector<T> e;
    std::vector<Subspace<T>> blocks;
    if (mode == ExtractMode::derived_degenerate) {
      const auto dg = derived_ideal(L);
      const auto rad = radical(dg, g);
      if (rad.is_zero()) throw Error(ErrorKind::nondegenerate_subspace, "[g,g] is nondegenerate");
      e = rad.basis()[0];
      blocks = {dg, orthogonal_complement(dg, g)};
    } else {
      const auto z = center(L);
      if (z.is_zero()) throw Error(ErrorKind::nondegenerate_subspace, "center is trivial");
      const auto rad = radical(z, g);
      if (!rad.is_zero()) {
        e = rad.basis()[0];
      } else if (auto iso = rational_isotropic(z, g)) {
        e = *iso;
      } else {
        throw Error(ErrorKind::nondegenerate_subspace, "center contains no isotropic vector");
      }
      blocks = {orthogonal_complement(Subspace<T>::span(N, {e}), g)};
    }

    if (is_completely_solvable(L).decision != Decision::yes) throw HypothesisFailed("algebra is completely solvable");
    if (!is_unimodular(L)) throw HypothesisFailed("algebra is unimodular");
    const auto lambda = einstein_check(p);
    if (!lambda) throw HypothesisFailed("metric is Einstein");

    const auto witt = complete_witt_basis_adapted(e, g, blocks);
    const std::size_t n = N - 2;
    const std::size_t bar = N - 1;
    std::vector<Vector<T>> cols{witt.e};
    cols.insert(cols.end(), witt.spacelike.begin(), witt.spacelike.end());
    cols.push_back(witt.e_bar);
    const Matrix<T> basis = Matrix<T>::from_columns(cols, N);
    const LieAlgebra<T> q = change_basis(L, basis);

    const Matrix<T> g0 = Matrix<T>::diagonal(witt.spacelike_norms);
    Matrix<T> omega(n, n), d(n, n);
    Vector<T> beta(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < n; ++c) {
        omega(a, c) = q.constant(1 + a, 1 + c, 0);
        d(c, a) = q.constant(bar, 1 + a, 1 + c);
      }
      beta[a] = q.constant(bar, 1 + a, 0);
    }
    const Matrix<T> g0_inv = inverse(g0);
    auto params = abelian_params<T>(g0, g0_inv * omega.transpose(), d, q.constant(bar, 0, 0), g0_inv * beta);

    ExtractionResult<T> r{params, basis, *lambda, {}, false};
    const auto rebuilt = build(params);
    r.round_trip = rebuilt.algebra().constants() == q.constants() &&
                   rebuilt.metric().gram() == basis.transpose() * g.gram() * basis;

    auto coeff_zero = [&](std::size_t i, std::size_t j, std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k)
        if (!is_zero(q.constant(i, j, k))) return false;
      return true;
    };
    bool s_e = true, s_perp = true, e_commutes = true, e_perp_derived = true, kbar = true;
    for (std::size_t x = 0; x < N; ++x) {
      if (!coeff_zero(0, x, 1, bar)) s_e = false;
      for (std::size_t y = 0; y < N; ++y)
        if (!is_zero(q.constant(x, y, bar))) e_perp_derived = false;
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!coeff_zero(0, 1 + a, 0, N)) e_commutes = false;
      if (!is_zero(q.constant(bar, 1 + a, bar))) kbar = false;
      for (std::size_t c = 0; c < n; ++c)
        if (!coeff_zero(1 + a, 1 + c, 1, bar)) s_perp = false;
    }
    if (!is_zero(q.constant(bar, 0, bar))) kbar = false;

    r.facts.push_back({"lambda vanishes", is_zero(*lambda)});
    r.facts.push_back({"S_i(e) = 0", s_e});
    r.facts.push_back({"S_i(e-perp) lies in Re", s_perp});
    r.facts.push_back({"e is orthogonal to [g,g]", e_perp_derived});
    r.facts.push_back({"[e, g0] = 0", e_commutes});
    if (mode == ExtractMode::derived_degenerate) {
      bool k_e = true;
      for (std::size_t a = 0; a < n; ++a)
        if (!is_zero(q.constant(1 + a, 0, 0))) k_e = false;
      r.facts.push_back({"<K u, e> = 0 on g0", k_e});
      r.facts.push_back({"mu = -tr D", is_zero(T(params.mu + params.D.trace()))});
    } else {
      r.facts.push_back({"K̄(ē) lies in Re", kbar});
      r.facts.push_back({"mu = 0", is_zero(params.mu)});
    }
    r.facts.push_back({"rebuilt extension matches", r.round_trip});
    return r;
  }
}

#define LORLIE_INSTANTIATE(T)                                                                             \
  template struct DoubleExtensionParams<T>;                                                               \
  template DoubleExtensionParams<T> abelian_params(const Matrix<T>&, Matrix<T>, Matrix<T>, T, Vector<T>); \
  template void validate(const DoubleExtensionParams<T>&);                                                \
  template PseudoEuclideanLieAlgebra<T> build(const DoubleExtensionParams<T>&);                           \
  template AdmissibilityReport<T> admissibility(const DoubleExtensionParams<T>&);                         \
  template UnimodularityReport<T> unimodularity(const DoubleExtensionParams<T>&);                         \
  template T dext1(const DoubleExtensionParams<T>&);                                                      \
  template Vector<T> dext2(const DoubleExtensionParams<T>&);                                              \
  template EinsteinConditionsReport<T> einstein_conditions(const DoubleExtensionParams<T>&);              \
  template std::vector<CheckStep> intermediate_identities(const DoubleExtensionParams<T>&);               \
  template ExtractionResult<T> extract(const PseudoEuclideanLieAlgebra<T>&, ExtractMode);

LORLIE_INSTANTIATE(Rational)
LORLIE_INSTANTIATE(double)

#undef LORLIE_INSTANTIATE

}  // namespace lorlie
