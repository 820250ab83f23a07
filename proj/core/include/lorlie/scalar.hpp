#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace lorlie {

/// Arbitrary-precision rational; exact mode never rounds.
using Rational = mpq_class;

/// Tolerance used by every float-mode comparison. Defaults to 1e-9.
double float_tolerance() noexcept;
void set_float_tolerance(double eps);

/// Restores the previous tolerance on scope exit.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double eps) : saved_(float_tolerance()) {
    set_float_tolerance(eps);
  }
  ~ScopedTolerance() { set_float_tolerance(saved_); }
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double saved_;
};

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*scale*/ = 1.0) {
    return sgn(x) == 0;
  }
  static int sign(const Rational& x, double /*scale*/ = 1.0) { return sgn(x); }
  static Rational abs(const Rational& x) { return Rational(::abs(x)); }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static double to_double(const Rational& x) { return x.get_d(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  /// |x| <= eps * max(1, scale)
  static bool is_zero(double x, double scale = 1.0) {
    return std::fabs(x) <= float_tolerance() * std::max(1.0, scale);
  }
  static int sign(double x, double scale = 1.0) {
    if (is_zero(x, scale)) return 0;
    return x < 0 ? -1 : 1;
  }
  static double abs(double x) { return std::fabs(x); }
  static double magnitude(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
};

template <typename T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

/// GMP expression templates decay to Rational.
template <typename T>
struct scalar_of {
  using type = T;
};
template <typename U, typename V>
struct scalar_of<__gmp_expr<U, V>> {
  using type = Rational;
};
template <typename T>
using scalar_of_t = typename scalar_of<T>::type;

template <typename T>
bool is_zero(const T& x, double scale = 1.0) {
  using S = scalar_of_t<T>;
  return ScalarTraits<S>::is_zero(S(x), scale);
}

template <typename T>
int sign(const T& x, double scale = 1.0) {
  using S = scalar_of_t<T>;
  return ScalarTraits<S>::sign(S(x), scale);
}

template <typename T>
double magnitude(const T& x) {
  using S = scalar_of_t<T>;
  return ScalarTraits<S>::magnitude(S(x));
}

template <typename T>
T scalar_cast(const Rational& x) {
  if constexpr (is_exact_v<T>) {
    return x;
  } else {
    return x.get_d();
  }
}

/// Canonical "p" or "p/q" form.
std::string to_string(const Rational& x);

/// Accepts "p", "-p", "p/q"; throws Error(parse) otherwise.
Rational parse_rational(const std::string& text);

/// Exact square root when x is the square of a rational.
bool rational_sqrt(const Rational& x, Rational& root);

}  // namespace lorlie
