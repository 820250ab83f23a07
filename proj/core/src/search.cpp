#include "lorlie/search.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "lorlie/polynomial.hpp"

namespace lorlie {

std::vector<Matrix<Rational>> k_constraint_space(const Matrix<Rational>& D, const Rational& mu,
                                                 const Matrix<Rational>& g0) {
  const std::size_t n = D.rows();
  if (D.cols() != n || g0.rows() != n || g0.cols() != n) {
    throw Error(ErrorKind::shape_mismatch, "D and g0 must be square of the same size");
  }
  // W = g0 K is antisymmetric; unknowns W(a, b) for a < b. The condition
  // WD + DᵀW = mu W is antisymmetric too, so rows a < b suffice.
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) vars.emplace_back(a, b);
  const std::size_t m = vars.size();
  if (m == 0) return {};
  auto basis_w = [&](std::size_t v) {
    Matrix<Rational> w(n, n);
    w(vars[v].first, vars[v].second) = 1;
    w(vars[v].second, vars[v].first) = -1;
    return w;
  };
  Matrix<Rational> system(m, m);
  for (std::size_t v = 0; v < m; ++v) {
    const Matrix<Rational> w = basis_w(v);
    const Matrix<Rational> r = w * D + D.transpose() * w - w * mu;
    for (std::size_t row = 0; row < m; ++row) system(row, v) = r(vars[row].first, vars[row].second);
  }
  const Matrix<Rational> g0_inv = inverse(g0);
  std::vector<Matrix<Rational>> out;
  for (const auto& x : kernel(system)) {
    Matrix<Rational> w(n, n);
    for (std::size_t v = 0; v < m; ++v) w += basis_w(v) * x[v];
    out.push_back(g0_inv * w);
  }
  return out;
}

std::vector<Matrix<Rational>> k_constraint_space(const Matrix<Rational>& D, const Rational& mu) {
  return k_constraint_space(D, mu, Matrix<Rational>::identity(D.rows()));
}

std::optional<Rational> scale_to_einstein(const Matrix<Rational>& K, const Matrix<Rational>& D, const Rational& mu,
                                          const std::optional<Matrix<Rational>>& g0) {
  const std::size_t n = D.rows();
  const MetricTensor<Rational> metric(g0 ? *g0 : Matrix<Rational>::identity(n));
  if (is_zero_matrix(K)) return std::nullopt;
  const Matrix<Rational> d_star = metric_adjoint(D, metric);
  const Rational rhs = Rational(2 * (D * D).trace() + 2 * (D * d_star).trace() - 4 * mu * D.trace());
  const Rational norm = -(K * K).trace();
  if (sgn(rhs) <= 0 || sgn(norm) <= 0) return std::nullopt;
  Rational t;
  if (!rational_sqrt(Rational(rhs / norm), t)) return std::nullopt;
  return t;
}

CertificateChecks verify_certificate(const DoubleExtensionParams<Rational>& params) {
  CertificateChecks c;
  const auto built = build(params);
  c.jacobi = built.algebra().jacobi_defect().vanishes;
  c.real_spectrum = is_real_rooted(characteristic_polynomial(params.D));
  if (!c.jacobi) return c;
  const auto& L = built.algebra();
  c.unimodular = is_unimodular(L);
  c.einstein_conditions = einstein_conditions(params).einstein;
  c.ricci_zero = is_zero_matrix(ricci_direct(built).ricci);
  c.completely_solvable = is_completely_solvable(L).decision;
  for (const auto& d : derivation_space(L))
    if (sgn(d.trace()) != 0) {
      c.nonzero_trace_derivation = true;
      break;
    }
  return c;
}

namespace {

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::size_t index, int bound) : bound_(std::max(1, bound)) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
  }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(int one_in) { return integer(0, one_in - 1) == 0; }

  Rational rational() {
    const long q = integer(1, bound_);
    Rational r(integer(-bound_ * q, bound_ * q), q);
    r.canonicalize();
    return r;
  }
  Rational nonzero() {
    for (;;) {
      Rational r = rational();
      if (sgn(r) != 0) return r;
    }
  }
  Rational positive() {
    Rational r = nonzero();
    return r < 0 ? Rational(-r) : r;
  }

  /// Integer matrix of determinant 1.
  Matrix<Rational> unimodular(std::size_t n) {
    auto p = Matrix<Rational>::identity(n);
    for (std::size_t step = 0; step < 2 * n; ++step) {
      const auto i = static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1));
      const auto j = static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1));
      if (i == j) continue;
      const long c = integer(-2, 2);
      for (std::size_t k = 0; k < n; ++k) p(i, k) += p(j, k) * c;
    }
    return p;
  }

 private:
  long bound_;
  std::mt19937_64 rng_;
};

std::optional<DoubleExtensionParams<Rational>> draw_params(const SearchConfig& cfg, Sampler& s) {
  const std::size_t n = cfg.dim_g0;
  Matrix<Rational> d0(n, n), w(n, n);
  Vector<Rational> g(n);
  Rational mu;

  if (n == 1) {
    // K = 0, and dext1 reads 4 mu d - 4 d² = 0.
    if (cfg.unimodular) return std::nullopt;
    d0(0, 0) = s.nonzero();
    mu = d0(0, 0);
    g[0] = s.positive();
  } else {
    // Coordinates 0 and 1 carry eigenvalues l1 + l2 = mu, which puts
    // e_0 ∧ e_1 in the constraint space. The rest are 1x1 blocks or
    // rotation blocks a Id + beta J; the metric is constant on blocks.
    std::vector<std::size_t> group(n);
    group[0] = 0;
    group[1] = 1;
    Rational other_trace = 0;
    std::size_t pos = 2, next_group = 2;
    while (pos < n) {
      if (pos + 1 < n && s.coin(4)) {
        const Rational a = s.rational(), beta = s.nonzero();
        d0(pos, pos) = a;
        d0(pos + 1, pos + 1) = a;
        d0(pos, pos + 1) = -beta;
        d0(pos + 1, pos) = beta;
        other_trace += 2 * a;
        group[pos] = group[pos + 1] = next_group++;
        pos += 2;
      } else {
        d0(pos, pos) = s.rational();
        other_trace += d0(pos, pos);
        group[pos] = next_group++;
        ++pos;
      }
    }
    mu = cfg.unimodular ? Rational(-other_trace / 2) : s.rational();
    d0(0, 0) = s.rational();
    d0(1, 1) = mu - d0(0, 0);

    const auto space = k_constraint_space(d0, mu);
    for (const auto& k : space) w += k * s.rational();
    if (sgn(w(0, 1)) == 0) return std::nullopt;

    std::vector<Rational> group_metric(next_group);
    for (auto& x : group_metric) x = s.positive();
    for (std::size_t i = 0; i < n; ++i) g[i] = group_metric[group[i]];

    // -tr K² = sum W_ij² / (g_i g_j) = A + B / g_1 must equal C.
    const Rational c = 2 * (d0 * d0).trace() + 2 * (d0 * d0.transpose()).trace() - 4 * mu * d0.trace();
    if (sgn(c) <= 0) return std::nullopt;
    auto split = [&](Rational& a, Rational& b) {
      a = 0;
      b = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == 1 && j == 1) continue;
          const Rational sq = w(i, j) * w(i, j);
          if (i == 1) b += sq / g[j];
          else if (j == 1) b += sq / g[i];
          else a += sq / (g[i] * g[j]);
        }
    };
    Rational a, b;
    split(a, b);
    if (a >= c) {
      const auto sigma = static_cast<long>(std::ceil(std::sqrt(2.0 * a.get_d() / c.get_d()))) + 1;
      for (std::size_t i = 0; i < n; ++i)
        if (i != 1) g[i] *= sigma;
      split(a, b);
    }
    g[1] = b / (c - a);
  }

  const Matrix<Rational> g0 = Matrix<Rational>::diagonal(g);
  Matrix<Rational> k0 = inverse(g0) * w;
  Vector<Rational> b0(n);
  for (auto& x : b0) x = s.rational();

  Matrix<Rational> gram = g0, d = d0, k = k0;
  Vector<Rational> b = b0;
  if (s.coin(2)) {
    const Matrix<Rational> p = s.unimodular(n);
    const Matrix<Rational> pinv = inverse(p);
    d = p * d0 * pinv;
    k = p * k0 * pinv;
    b = p * b0;
    gram = pinv.transpose() * g0 * pinv;
  }
  return abelian_params<Rational>(gram, k, d, mu, b);
}

std::optional<Certificate> sample(const SearchConfig& cfg, std::size_t index, std::size_t& rejected) {
  Sampler s(cfg.seed, index, cfg.entry_bound);
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    auto params = draw_params(cfg, s);
    if (!params) {
      if (cfg.dim_g0 == 1 && cfg.unimodular) return std::nullopt;
      continue;
    }
    const auto checks = verify_certificate(*params);
    const bool ok = checks.jacobi && checks.einstein_conditions && checks.ricci_zero &&
                    (!cfg.unimodular || checks.unimodular);
    if (!ok) {
      ++rejected;
      continue;
    }
    auto algebra = build(*params);
    return Certificate{index, std::move(*params), std::move(algebra), checks, !checks.real_spectrum};
  }
  return std::nullopt;
}

}  // namespace

SearchResult generate(const SearchConfig& cfg) {
  if (cfg.dim_g0 < 1 || cfg.samples < 1) {
    throw Error(ErrorKind::shape_mismatch, "search needs dim_g0 >= 1 and samples >= 1");
  }
  std::vector<std::optional<Certificate>> slots(cfg.samples);
  std::vector<std::size_t> rejected(cfg.samples, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.samples; i = next++) slots[i] = sample(cfg, i, rejected[i]);
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, cfg.samples));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchResult result;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    result.rejected += rejected[i];
    if (slots[i]) result.certificates.push_back(std::move(*slots[i]));
  }
  if (result.certificates.empty()) {
    result.empty_flagged = true;
    result.note = cfg.dim_g0 == 1 && cfg.unimodular
                      ? "dim_g0 = 1 forces K = 0; no unimodular Ricci-flat extension with D != 0 exists"
                      : "no certificate found for this configuration";
  }
  return result;
}

}  // namespace lorlie
