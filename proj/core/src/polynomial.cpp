#include "lorlie/polynomial.hpp"

#include <algorithm>
#include <utility>

namespace lorlie {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> coeffs(degree + 1, Rational(0));
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int Polynomial::sign_at_infinity(bool positive) const {
  if (coeffs_.empty()) return 0;
  const int s = sgn(coeffs_.back());
  if (positive || degree() % 2 == 0) return s;
  return -s;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (coeffs_.empty()) return {};
  std::vector<Rational> c = coeffs_;
  const Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] -= b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

void Polynomial::divide(const Polynomial& a, const Polynomial& b, Polynomial& quotient,
                        Polynomial& remainder) {
  if (b.is_zero()) throw Error(ErrorKind::singular_matrix, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  const int db = b.degree();
  std::vector<Rational> quot(a.degree() >= db ? a.degree() - db + 1 : 0, Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    const Rational f = rem[k] / b.coeffs_.back();
    quot[k - db] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeffs_[j];
  }
  quotient = Polynomial(std::move(quot));
  remainder = Polynomial(std::move(rem));
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial q, r;
    Polynomial::divide(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  const Polynomial g = gcd(p, p.derivative());
  Polynomial q, r;
  Polynomial::divide(p, g, q, r);
  return q.monic();
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  Polynomial next = p.derivative();
  while (!next.is_zero()) {
    chain.push_back(next);
    Polynomial q, r;
    Polynomial::divide(chain[chain.size() - 2], chain.back(), q, r);
    next = Polynomial() - r;
  }
  return chain;
}

namespace {

template <typename SignOf>
std::size_t sign_variations(const std::vector<Polynomial>& chain, SignOf sign_of) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& poly : chain) {
    const int s = sign_of(poly);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::size_t variations_at(const std::vector<Polynomial>& chain, const Rational& x) {
  return sign_variations(chain, [&](const Polynomial& q) { return q.sign_at(x); });
}

std::size_t count_in(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b) {
  const std::size_t va = variations_at(chain, a);
  const std::size_t vb = variations_at(chain, b);
  return va >= vb ? va - vb : 0;
}

Rational floor_of(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

}  // namespace

std::size_t count_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.degree() <= 0 || !(a < b)) return 0;
  return count_in(sturm_sequence(squarefree_part(p)), a, b);
}

std::size_t count_real_roots(const Polynomial& p) {
  if (p.degree() <= 0) return 0;
  const auto chain = sturm_sequence(squarefree_part(p));
  const std::size_t neg = sign_variations(chain, [](const Polynomial& q) { return q.sign_at_infinity(false); });
  const std::size_t pos = sign_variations(chain, [](const Polynomial& q) { return q.sign_at_infinity(true); });
  return neg >= pos ? neg - pos : 0;
}

bool is_real_rooted(const Polynomial& p) {
  if (p.degree() <= 0) return true;
  const Polynomial q = squarefree_part(p);
  return count_real_roots(q) == static_cast<std::size_t>(q.degree());
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return Rational(-simplest_rational_between(-hi, -lo));
  const Rational fl = floor_of(lo);
  if (fl == lo) return lo;
  if (fl + 1 <= hi) return Rational(fl + 1);
  const Rational one(1);
  const Rational inner = simplest_rational_between(Rational(one / (hi - fl)), Rational(one / (lo - fl)));
  return Rational(fl + one / inner);
}

std::vector<Rational> rational_roots(const Polynomial& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  Polynomial q = squarefree_part(p);

  // Primitive integer multiple: the denominator of a rational root divides lc.
  mpz_class lcm_den = 1;
  for (const auto& c : q.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  mpz_class lead = q.leading().get_num() * (lcm_den / q.leading().get_den());
  mpz_class bound_num = 0;
  for (const auto& c : q.coefficients()) {
    mpz_class v = abs(c.get_num() * (lcm_den / c.get_den()));
    if (v > bound_num) bound_num = v;
  }
  lead = abs(lead);
  Rational bound(bound_num, lead);
  bound.canonicalize();
  bound += 1;
  const Rational target_width = Rational(mpz_class(1), lead * lead * 2);

  const auto chain = sturm_sequence(q);
  struct Interval {
    Rational lo, hi;
  };
  std::vector<Interval> stack{{Rational(-bound), bound}};
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const std::size_t n = count_in(chain, iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1 && iv.hi - iv.lo < target_width) {
      const Rational s = simplest_rational_between(iv.lo, iv.hi);
      if (s.get_den() <= lead && sgn(q(s)) == 0) roots.push_back(s);
      continue;
    }
    const Rational mid = (iv.lo + iv.hi) / 2;
    stack.push_back({mid, iv.hi});
    stack.push_back({iv.lo, mid});
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

Polynomial characteristic_polynomial(const Matrix<Rational>& m) {
  if (!m.is_square()) throw Error(ErrorKind::shape_mismatch, "characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix<Rational> mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    c[n - k] = -(m * mk).trace() / static_cast<long>(k);
  }
  return Polynomial(std::move(c));
}

}  // namespace lorlie
