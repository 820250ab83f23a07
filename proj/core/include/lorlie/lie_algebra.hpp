#pragma once

#include <optional>
#include <vector>

#include "lorlie/linear_algebra.hpp"

namespace lorlie {

/// Three-valued answer for predicates that float mode cannot decide.
enum class Decision { no, yes, indeterminate };

const char* to_string(Decision d) noexcept;

/// Largest component of a cyclic Jacobi sum, with the triple where it occurs.
template <typename T>
struct JacobiDefect {
  double norm = 0.0;
  std::size_t i = 0, j = 0, k = 0;
  Vector<T> defect;
  /// Exact zero, or within tolerance of the constants' scale in float mode.
  bool vanishes = true;
};

/// Finite-dimensional real Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c(i, j, k) e_k.
template <typename T>
class LieAlgebra {
 public:
  struct Unchecked {};

  /// [e_i, e_j] for i < j, 0-based.
  struct BracketEntry {
    std::size_t i;
    std::size_t j;
    Vector<T> coeffs;
  };

  LieAlgebra() = default;

  /// constants[(i * n + j) * n + k] = c(i, j, k). Throws shape_mismatch if the
  /// tensor is not antisymmetric and not_a_lie_algebra if Jacobi fails.
  LieAlgebra(std::size_t n, std::vector<T> constants);

  /// Skips the Jacobi check so that defects can be reported.
  LieAlgebra(Unchecked, std::size_t n, std::vector<T> constants);

  static LieAlgebra abelian(std::size_t n) { return LieAlgebra(n, std::vector<T>(n * n * n, T(0))); }
  static LieAlgebra from_brackets(std::size_t n, const std::vector<BracketEntry>& brackets);
  static LieAlgebra from_brackets(Unchecked, std::size_t n, const std::vector<BracketEntry>& brackets);

  std::size_t dim() const noexcept { return n_; }
  const T& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }
  const std::vector<T>& constants() const noexcept { return c_; }

  /// [e_i, e_j]
  Vector<T> bracket(std::size_t i, std::size_t j) const;
  Vector<T> bracket(const Vector<T>& u, const Vector<T>& v) const;

  /// ad_{e_i}; column j is [e_i, e_j].
  const Matrix<T>& ad(std::size_t i) const { return ad_[i]; }
  const std::vector<Matrix<T>>& ad_basis() const noexcept { return ad_; }
  Matrix<T> ad(const Vector<T>& u) const;

  JacobiDefect<T> jacobi_defect() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }

 private:
  void init(bool check_jacobi);

  std::size_t n_ = 0;
  std::vector<T> c_;
  std::vector<Matrix<T>> ad_;
};

/// B(u, v) = tr(ad_u ad_v) as a Gram matrix.
template <typename T>
Matrix<T> killing_form(const LieAlgebra<T>& L);

/// tr(ad_{e_i}) for each basis vector.
template <typename T>
Vector<T> ad_traces(const LieAlgebra<T>& L);

/// [A, B] as a subspace.
template <typename T>
Subspace<T> bracket_span(const LieAlgebra<T>& L, const Subspace<T>& a, const Subspace<T>& b);

template <typename T>
Subspace<T> derived_ideal(const LieAlgebra<T>& L);

template <typename T>
Subspace<T> center(const LieAlgebra<T>& L);

template <typename T>
bool is_ideal(const LieAlgebra<T>& L, const Subspace<T>& s);

/// g, [g,g], ... stopping when a term repeats. The last term is 0 iff L is
/// solvable.
template <typename T>
std::vector<Subspace<T>> derived_series(const LieAlgebra<T>& L);

template <typename T>
std::vector<Subspace<T>> lower_central_series(const LieAlgebra<T>& L);

template <typename T>
bool is_solvable(const LieAlgebra<T>& L);

template <typename T>
bool is_nilpotent(const LieAlgebra<T>& L);

template <typename T>
bool is_unimodular(const LieAlgebra<T>& L);

template <typename T>
bool is_abelian(const LieAlgebra<T>& L);

template <typename T>
bool is_derivation(const LieAlgebra<T>& L, const Matrix<T>& d);

/// Basis of Der(g), each returned as an n x n matrix.
template <typename T>
std::vector<Matrix<T>> derivation_space(const LieAlgebra<T>& L);

template <typename T>
struct CompleteSolvability {
  Decision decision = Decision::indeterminate;
  /// I_1 ⊂ I_2 ⊂ ... ⊂ I_k, each an ideal of dimension equal to its index.
  /// When a weight is irrational the chain stops early.
  std::vector<Subspace<T>> flag;
  bool certificate_complete = false;
};

/// Exact mode: solvable and every ad_{e_i} has real spectrum (Sturm test),
/// plus a constructive flag of ideals. Float mode answers indeterminate.
template <typename T>
CompleteSolvability<T> is_completely_solvable(const LieAlgebra<T>& L);

template <typename T>
struct ClassificationFlags {
  bool abelian = false;
  bool nilpotent = false;
  bool solvable = false;
  Decision completely_solvable = Decision::indeterminate;
  bool unimodular = false;
  /// Steps until the series reaches 0; empty when it never does.
  std::optional<std::size_t> derived_series_length;
  std::optional<std::size_t> lower_central_length;
  CompleteSolvability<T> flag;
};

template <typename T>
ClassificationFlags<T> classify(const LieAlgebra<T>& L);

/// Structure constants in the basis given by the columns of p.
template <typename T>
LieAlgebra<T> change_basis(const LieAlgebra<T>& L, const Matrix<T>& p);

}  // namespace lorlie
