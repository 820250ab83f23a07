#pragma once

#include <string>
#include <vector>

#include "lorlie/metric_lie_algebra.hpp"

namespace lorlie {

/// g = Re ⊕ g0 ⊕ Rē with <e,ē> = 1 and brackets
///   [ē,e] = mu e,  [ē,u] = D u + <b,u>0 e,  [u,v] = [u,v]0 + <K u, v>0 e.
/// Built algebras use the basis order (e, g0 basis..., ē).
template <typename T>
struct DoubleExtensionParams {
  PseudoEuclideanLieAlgebra<T> g0;
  Matrix<T> K;
  Matrix<T> D;
  T mu{};
  Vector<T> b;

  std::size_t base_dim() const noexcept { return g0.dim(); }
};

/// Parameters over the abelian algebra with Euclidean Gram matrix g0.
template <typename T>
DoubleExtensionParams<T> abelian_params(const Matrix<T>& g0, Matrix<T> K, Matrix<T> D, T mu, Vector<T> b);

/// Shapes, Euclidean g0 and skew K. Throws shape_mismatch or not_lorentzian.
template <typename T>
void validate(const DoubleExtensionParams<T>& params);

/// The extension with its Lorentzian metric. Jacobi is not enforced, so the
/// result may fail it exactly when the parameters are not admissible.
template <typename T>
PseudoEuclideanLieAlgebra<T> build(const DoubleExtensionParams<T>& params);

template <typename T>
struct AdmissibilityReport {
  bool is_derivation = false;
  bool is_cocycle = false;
  Matrix<T> dext0_residual;  ///< KD + D*K - mu K - J_b
  bool admissible = false;
};

template <typename T>
AdmissibilityReport<T> admissibility(const DoubleExtensionParams<T>& params);

template <typename T>
struct UnimodularityReport {
  Vector<T> h;         ///< mean curvature of the built algebra
  Vector<T> expected;  ///< (mu + tr D) e + H0
  bool formula_holds = false;
  bool unimodular = false;
};

template <typename T>
UnimodularityReport<T> unimodularity(const DoubleExtensionParams<T>& params);

template <typename T>
struct EinsteinConditionsReport {
  bool g0_ricci_flat = false;
  T dext1_residual{};
  Vector<T> dext2_residuals;
  bool einstein = false;
};

/// 4 tr(ad0_b) + 4 mu tr D - 2 tr D² - 2 tr(D D*) - tr K²
template <typename T>
T dext1(const DoubleExtensionParams<T>& params);

/// tr(J0_u K) + 2 tr((D + D*) ad0_u) + 2 tr(ad0_{D* u}) - 2 tr(ad0_{K u}) for
/// each g0 basis vector u.
template <typename T>
Vector<T> dext2(const DoubleExtensionParams<T>& params);

/// Throws not_admissible when the parameters do not give a Lie algebra.
template <typename T>
EinsteinConditionsReport<T> einstein_conditions(const DoubleExtensionParams<T>& params);

/// Identities relating the operators of the built algebra to the
/// parameters: e-components of B̂(ē) and J₂(ē), the mean curvature, and the
/// blocks of Ric against dext1/dext2 and Ric of g0. Throws not_admissible.
template <typename T>
std::vector<CheckStep> intermediate_identities(const DoubleExtensionParams<T>& params);

enum class ExtractMode { derived_degenerate, center_degenerate };

const char* to_string(ExtractMode mode) noexcept;

template <typename T>
struct ExtractionResult {
  DoubleExtensionParams<T> params;
  /// Columns (e, f_1, ..., f_d, ē) in the coordinates of the input.
  Matrix<T> basis;
  T lambda{};
  /// Facts the structure theorems predict, checked on the input.
  std::vector<CheckStep> facts;
  /// build(params) has exactly the structure constants of the input in basis.
  bool round_trip = false;
};

/// Exact mode only. Requires a Lorentzian, completely solvable, unimodular
/// Einstein algebra. Mode derived_degenerate takes e spanning the radical of
/// [g,g]; mode center_degenerate takes an isotropic central e. Throws
/// nondegenerate_subspace when no such e exists and HypothesisFailed when a
/// hypothesis fails.
template <typename T>
ExtractionResult<T> extract(const PseudoEuclideanLieAlgebra<T>& p, ExtractMode mode);

}  // namespace lorlie
