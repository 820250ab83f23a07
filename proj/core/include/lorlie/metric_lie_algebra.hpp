#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lorlie/lie_algebra.hpp"
#include "lorlie/pseudo_euclidean.hpp"

namespace lorlie {

/// A Lie algebra together with a nondegenerate metric on the same space.
template <typename T>
class PseudoEuclideanLieAlgebra {
 public:
  PseudoEuclideanLieAlgebra(LieAlgebra<T> algebra, MetricTensor<T> metric);

  std::size_t dim() const noexcept { return algebra_.dim(); }
  const LieAlgebra<T>& algebra() const noexcept { return algebra_; }
  const MetricTensor<T>& metric() const noexcept { return metric_; }

 private:
  LieAlgebra<T> algebra_;
  MetricTensor<T> metric_;
};

/// Koszul: 2<L_u v, w> = <[u,v],w> + <[w,u],v> + <[w,v],u>.
template <typename T>
Vector<T> levi_civita(const PseudoEuclideanLieAlgebra<T>& p, const Vector<T>& u, const Vector<T>& v);

/// L_u as a matrix.
template <typename T>
Matrix<T> levi_civita_operator(const PseudoEuclideanLieAlgebra<T>& p, const Vector<T>& u);

/// L_{e_i} for every basis vector.
template <typename T>
std::vector<Matrix<T>> levi_civita_operators(const PseudoEuclideanLieAlgebra<T>& p);

/// K(u,v) = L_[u,v] - [L_u, L_v].
template <typename T>
Matrix<T> curvature(const PseudoEuclideanLieAlgebra<T>& p, const Vector<T>& u, const Vector<T>& v);

template <typename T>
bool is_flat(const PseudoEuclideanLieAlgebra<T>& p);

template <typename T>
struct CurvatureReport {
  Matrix<T> ricci;  ///< operator Ric, <Ric u, v> = ric(u, v)
  Matrix<T> ric;    ///< bilinear form
  Vector<T> mean_curvature;
  std::optional<T> einstein_lambda;
  bool flat = false;
  bool ricci_flat = false;
  bool einstein = false;
};

/// ric(u,v) = tr(w -> K(u,w)v) from the curvature operators.
template <typename T>
CurvatureReport<T> ricci_direct(const PseudoEuclideanLieAlgebra<T>& p);

/// ric(u,v) = -tr(R_u R_v) - (<ad_H u, v> + <ad_H v, u>)/2 with
/// R_u = -(ad_u + ad_u*)/2 - J_u/2.
template <typename T>
CurvatureReport<T> ricci_from_r_operators(const PseudoEuclideanLieAlgebra<T>& p);

/// Ric = -(B̂ + J₁)/2 + J₂/4 - (ad_H + ad_H*)/2; the last term is skipped
/// for unimodular algebras.
template <typename T>
CurvatureReport<T> ricci_operator_formula(const PseudoEuclideanLieAlgebra<T>& p);

/// <H, u> = tr(ad_u).
template <typename T>
Vector<T> mean_curvature(const PseudoEuclideanLieAlgebra<T>& p);

/// [u,v] = sum_i <S_i u, v> b_i for the basis b (columns of basis).
template <typename T>
struct StructureEndos {
  Matrix<T> basis;
  std::vector<Matrix<T>> S;
};

/// Throws singular_basis when the columns are dependent.
template <typename T>
StructureEndos<T> structure_endos(const PseudoEuclideanLieAlgebra<T>& p, const Matrix<T>& basis);

template <typename T>
StructureEndos<T> structure_endos(const PseudoEuclideanLieAlgebra<T>& p) {
  return structure_endos(p, Matrix<T>::identity(p.dim()));
}

/// J_u v = ad_v* u.
template <typename T>
Matrix<T> j_map(const PseudoEuclideanLieAlgebra<T>& p, const Vector<T>& u);

template <typename T>
struct Operators {
  Matrix<T> b_hat;  ///< <B̂u,v> = tr(ad_u ad_v)
  Matrix<T> j1;     ///< <J₁u,v> = tr(ad_u ad_v*)
  Matrix<T> j2;     ///< <J₂u,v> = -tr(J_u J_v)
  Vector<T> h;      ///< mean curvature vector
};

/// From the defining traces.
template <typename T>
Operators<T> operators(const PseudoEuclideanLieAlgebra<T>& p);

/// J₁ = -sum g_ij S_i S_j and J₂ = -P T Pᵀ g with T_ij = tr(S_i S_j), where
/// g_ij is the Gram matrix of the basis P.
template <typename T>
Operators<T> operators_from_structure_endos(const PseudoEuclideanLieAlgebra<T>& p,
                                            const StructureEndos<T>& endos);

/// Q = -J₁/2 + J₂/4.
template <typename T>
Matrix<T> q_operator(const Operators<T>& ops);

template <typename T>
struct TraceIdentity {
  T lhs;  ///< tr(Q E)
  T rhs;  ///< quarter sum over an orthogonal basis
};

/// Exact mode uses an orthogonal basis with <b_i,b_i> = d_i and weights
/// 1/(d_i d_j); float mode normalizes the basis and uses signs.
template <typename T>
TraceIdentity<T> trace_q_times(const PseudoEuclideanLieAlgebra<T>& p, const Matrix<T>& e);

/// Same, with Q and the orthogonal basis precomputed (for batches of E).
template <typename T>
class TraceIdentityEvaluator {
 public:
  explicit TraceIdentityEvaluator(const PseudoEuclideanLieAlgebra<T>& p);
  TraceIdentity<T> operator()(const Matrix<T>& e) const;

 private:
  const PseudoEuclideanLieAlgebra<T>* p_;
  Matrix<T> q_;
  std::vector<Vector<T>> basis_;
  Vector<T> weight_;  ///< 1/<b_i,b_i> (or the sign, float mode)
  std::vector<std::vector<Vector<T>>> brackets_;
};

/// lambda = tr(Ric)/n when Ric - lambda Id vanishes.
template <typename T>
std::optional<T> einstein_check(const PseudoEuclideanLieAlgebra<T>& p);

template <typename T>
std::optional<T> einstein_lambda(const Matrix<T>& ricci);

/// One named assertion of a verification routine.
struct CheckStep {
  std::string name;
  bool passed;
};

template <typename T>
struct NondegenerateCenterReport {
  bool center_lorentzian = false;
  T lambda{};
  /// c tr(K²)/4 for the timelike central e with <e,e> = -c.
  std::optional<T> quarter_trace_k2;
  std::vector<CheckStep> steps;

  bool all_passed() const {
    for (const auto& s : steps)
      if (!s.passed) return false;
    return true;
  }
};

/// Requires a Lorentzian, solvable, unimodular Einstein algebra with
/// nondegenerate center (HypothesisFailed otherwise). With a Lorentzian
/// center, checks lambda = c tr(K²)/4, lambda = 0, K = 0, flatness, and the
/// split g = b ⊕ a with b = Re + [g,g] an abelian ideal, a = b^⊥ an abelian
/// subalgebra, L = 0 on b and L_u = ad_u on a.
template <typename T>
NondegenerateCenterReport<T> verify_nondegenerate_center_prop(const PseudoEuclideanLieAlgebra<T>& p);

}  // namespace lorlie
