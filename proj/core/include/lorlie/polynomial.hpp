#pragma once

#include <vector>

#include "lorlie/matrix.hpp"

namespace lorlie {

/// Univariate polynomial over Q, coefficients stored low degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial monomial(const Rational& c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
  Rational coefficient(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
  }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn((*this)(x)); }
  /// Sign as x -> +inf (positive) or -inf (negative).
  int sign_at_infinity(bool positive) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division; divisor must be nonzero.
  static void divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient,
                     Polynomial& remainder);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd.
Polynomial gcd(Polynomial a, Polynomial b);

/// p / gcd(p, p'), monic.
Polynomial squarefree_part(const Polynomial& p);

/// Sturm chain p, p', -rem(p, p'), ... of a squarefree polynomial.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Distinct real roots of p in (a, b].
std::size_t count_real_roots(const Polynomial& p, const Rational& a, const Rational& b);

/// Distinct real roots of p on the whole line.
std::size_t count_real_roots(const Polynomial& p);

/// True iff every complex root of p is real.
bool is_real_rooted(const Polynomial& p);

/// Distinct rational roots, ascending. Uses Sturm isolation down to intervals
/// narrower than 1/lc^2 and then tests the simplest rational in each.
std::vector<Rational> rational_roots(const Polynomial& p);

/// Rational of least denominator in [lo, hi], lo <= hi.
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

/// det(x I - m), monic of degree n (Faddeev-LeVerrier).
Polynomial characteristic_polynomial(const Matrix<Rational>& m);

}  // namespace lorlie
