#include "lorlie/scalar.hpp"

#include <atomic>
#include <cctype>

#include "lorlie/error.hpp"

namespace lorlie {

namespace {
std::atomic<double> g_tolerance{1e-9};
}  // namespace

double float_tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_float_tolerance(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::shape_mismatch, "tolerance must be positive");
  g_tolerance.store(eps, std::memory_order_relaxed);
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::degenerate_metric: return "DegenerateMetric";
    case ErrorKind::not_isotropic: return "NotIsotropic";
    case ErrorKind::not_lorentzian: return "NotLorentzian";
    case ErrorKind::shape_mismatch: return "ShapeMismatch";
    case ErrorKind::singular_matrix: return "SingularMatrix";
    case ErrorKind::singular_basis: return "SingularBasis";
    case ErrorKind::not_a_lie_algebra: return "NotALieAlgebra";
    case ErrorKind::hypothesis_failed: return "HypothesisFailed";
    case ErrorKind::nondegenerate_subspace: return "NondegenerateSubspace";
    case ErrorKind::not_admissible: return "NotAdmissible";
    case ErrorKind::requires_exact_mode: return "RequiresExactMode";
    case ErrorKind::cross_check_mismatch: return "CrossCheckMismatch";
    case ErrorKind::parse: return "ParseError";
  }
  return "Unknown";
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& text) {
  // mpq_class::set_str accepts things like "1/0" or "0x10"; be strict.
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  const std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) throw Error(ErrorKind::parse, "malformed rational '" + text + "'");
  if (i < text.size()) {
    if (text[i] != '/') throw Error(ErrorKind::parse, "malformed rational '" + text + "'");
    ++i;
    const std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) {
      throw Error(ErrorKind::parse, "malformed rational '" + text + "'");
    }
  }
  std::string body = text[0] == '+' ? text.substr(1) : text;
  Rational q;
  if (q.set_str(body, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorKind::parse, "malformed rational '" + text + "'");
  }
  q.canonicalize();
  return q;
}

bool rational_sqrt(const Rational& x, Rational& root) {
  if (sgn(x) < 0) return false;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) {
    return false;
  }
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), x.get_den_mpz_t());
  root = Rational(num, den);
  root.canonicalize();
  return true;
}

}  // namespace lorlie
