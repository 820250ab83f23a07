#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lorlie/double_extension.hpp"

namespace lorlie {

struct SearchConfig {
  std::size_t dim_g0 = 2;
  std::uint64_t seed = 0;
  std::size_t samples = 1;
  /// Entries are p/q with 1 <= q <= entry_bound and |p/q| <= entry_bound.
  int entry_bound = 3;
  /// trD = -mu; switching this off draws mu freely.
  bool unimodular = true;
  std::size_t threads = 1;
};

/// Independent re-verification of one generated extension.
struct CertificateChecks {
  bool jacobi = false;
  bool unimodular = false;
  bool einstein_conditions = false;
  bool ricci_zero = false;  ///< Ric from the curvature tensor vanishes exactly
  Decision completely_solvable = Decision::indeterminate;
  bool real_spectrum = false;  ///< D has real eigenvalues
  bool nonzero_trace_derivation = false;
};

struct Certificate {
  std::size_t index = 0;
  DoubleExtensionParams<Rational> params;
  PseudoEuclideanLieAlgebra<Rational> algebra;
  CertificateChecks checks;
  /// Set when D has non-real spectrum, so the structure theorems do not apply.
  bool flagged = false;
};

struct SearchResult {
  std::vector<Certificate> certificates;
  std::size_t rejected = 0;
  /// No certificate can exist for this configuration.
  bool empty_flagged = false;
  std::string note;
};

/// Basis of the skew K with KD + DᵀK = mu K (identity base metric).
std::vector<Matrix<Rational>> k_constraint_space(const Matrix<Rational>& D, const Rational& mu);

/// Same constraint for the Euclidean Gram matrix g0: K is g0-skew and
/// KD + D*K = mu K.
std::vector<Matrix<Rational>> k_constraint_space(const Matrix<Rational>& D, const Rational& mu,
                                                 const Matrix<Rational>& g0);

/// t > 0 with tr((tK)²) = 4 mu trD - 2 trD² - 2 tr(DD*), where D* is taken
/// for g0 (identity when omitted). Empty when K = 0, when the right side has
/// the wrong sign, or when t is irrational.
std::optional<Rational> scale_to_einstein(const Matrix<Rational>& K, const Matrix<Rational>& D, const Rational& mu,
                                          const std::optional<Matrix<Rational>>& g0 = std::nullopt);

CertificateChecks verify_certificate(const DoubleExtensionParams<Rational>& params);

/// Ricci-flat Lorentzian extensions of abelian algebras. Each sample index
/// has its own generator derived from (seed, index), so the output does not
/// depend on the thread count.
SearchResult generate(const SearchConfig& config);

}  // namespace lorlie
