// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "lorlie/algebra_io.hpp"

using namespace lorlie;
using namespace lorlie::corpus;

namespace {

constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr std::size_t kCorpusSize = 500;
constexpr std::size_t kMaxDim = 6;
constexpr double kFloatRelTol = 1e-8;
constexpr std::size_t kTraceDraws = 100;
constexpr std::size_t kParamDraws = 600;
constexpr std::size_t kRoundTrips = 100;
constexpr std::size_t kSkewDraws = 1000;
constexpr std::size_t kKillingDraws = 100;
constexpr double kRuntimeLimitSeconds = 300.0;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << "first failure: " << what << "; ";
    passed = passed && ok;
  }
};

const std::vector<CorpusEntry>& corpus() {
  static const auto c = random_corpus(kCorpusSeed, kCorpusSize, kMaxDim);
  return c;
}

double abs_dev(const Matrix<double>& f, const Matrix<Rational>& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) worst = std::max(worst, std::fabs(f(i, j) - x(i, j).get_d()));
  return worst;
}

/// Size of the products summed into Ric: |L|², |L||ad| and |Ric| itself.
/// Ricci-flat members cancel terms of this size down to zero.
double curvature_scale(const PseudoEuclideanLieAlgebra<Rational>& p, const Matrix<Rational>& ricci) {
  double l = 0.0, ad = 0.0;
  for (const auto& m : levi_civita_operators(p)) l = std::max(l, m.max_magnitude());
  for (const auto& m : p.algebra().ad_basis()) ad = std::max(ad, m.max_magnitude());
  return std::max({1.0, l * l, l * ad, ricci.max_magnitude()});
}

PseudoEuclideanLieAlgebra<double> to_float(const PseudoEuclideanLieAlgebra<Rational>& p) {
  std::vector<double> c;
  for (const auto& x : p.algebra().constants()) c.push_back(x.get_d());
  return PseudoEuclideanLieAlgebra<double>(LieAlgebra<double>(LieAlgebra<double>::Unchecked{}, p.dim(), c),
                                           MetricTensor<double>(matrix_cast<double>(p.metric().gram())));
}

// 1 -------------------------------------------------------------------------
void ricci_routes(Outcome& o) {
  double worst = 0.0, worst_entrywise = 0.0;
  for (const auto& [family, p] : corpus()) {
    const auto a = ricci_direct(p);
    const auto b = ricci_from_r_operators(p);
    const auto c = ricci_operator_formula(p);
    o.require(a.ricci == b.ricci && a.ricci == c.ricci, "exact routes differ on " + family);
    o.require(a.ric == quadratic_form_ricci(p), "quadratic-form oracle differs on " + family);
    const auto f = to_float(p);
    const double scale = curvature_scale(p, a.ricci);
    for (const auto& r : {ricci_direct(f).ricci, ricci_from_r_operators(f).ricci, ricci_operator_formula(f).ricci}) {
      const double d = abs_dev(r, a.ricci);
      worst = std::max(worst, d / scale);
      worst_entrywise = std::max(worst_entrywise, d / std::max(1.0, a.ricci.max_magnitude()));
    }
  }
  o.require(worst < kFloatRelTol, "float deviation");
  o.detail << corpus().size() << " algebras, float max rel dev " << worst << " (against |Ric| alone "
           << worst_entrywise << ")";
}

// 2 -------------------------------------------------------------------------
void j_operators(Outcome& o) {
  Rng rng(kCorpusSeed + 2);
  for (const auto& [family, p] : corpus()) {
    const auto ops = operators(p);
    const auto std_basis = operators_from_structure_endos(p, structure_endos(p));
    const auto other = operators_from_structure_endos(p, structure_endos(p, rng.unimodular(p.dim())));
    o.require(ops.j1 == std_basis.j1 && ops.j2 == std_basis.j2, "J mismatch on " + family);
    o.require(ops.j1 == other.j1 && ops.j2 == other.j2, "J mismatch in a random basis on " + family);
    o.require(ops.j1.trace() == ops.j2.trace(), "trace mismatch on " + family);
  }
  o.detail << corpus().size() << " algebras, standard and random bases";
}

// 3 -------------------------------------------------------------------------
void trace_identity(Outcome& o) {
  Rng rng(kCorpusSeed + 3);
  std::size_t evaluations = 0, derivations = 0;
  for (const auto& [family, p] : corpus()) {
    const TraceIdentityEvaluator<Rational> eval(p);
    for (std::size_t k = 0; k < kTraceDraws; ++k) {
      const auto r = eval(rng.matrix(p.dim(), 2));
      o.require(r.lhs == r.rhs, "tr(QE) identity on " + family);
      ++evaluations;
    }
    const auto q = q_operator(operators(p));
    for (const auto& d : derivation_space(p.algebra())) {
      o.require(sgn((q * d).trace()) == 0, "tr(QD) on " + family);
      ++derivations;
    }
  }
  o.detail << evaluations << " random E, " << derivations << " derivations";
}

// 4 -------------------------------------------------------------------------
void derivation_trace(Outcome& o) {
  std::size_t unimodular = 0, einstein_with_trace = 0;
  for (const auto& [family, p] : corpus()) {
    if (!is_unimodular(p.algebra())) continue;
    ++unimodular;
    const auto r = ricci_direct(p);
    bool nonzero_trace = false;
    for (const auto& d : derivation_space(p.algebra())) {
      o.require(sgn((r.ricci * d).trace()) == 0, "tr(Ric D) on " + family);
      nonzero_trace = nonzero_trace || sgn(d.trace()) != 0;
    }
    if (r.einstein && nonzero_trace) {
      ++einstein_with_trace;
      o.require(sgn(*r.einstein_lambda) == 0, "lambda != 0 on " + family);
    }
  }
  o.require(einstein_with_trace > 0, "no Einstein member with a nonzero-trace derivation");
  o.detail << unimodular << " unimodular, " << einstein_with_trace << " Einstein with nonzero-trace derivation";
}

// 5, 6 ----------------------------------------------------------------------
std::vector<ParamsDraw> param_draws() {
  Rng rng(kCorpusSeed + 5);
  std::vector<ParamsDraw> draws;
  for (std::size_t k = 0; k < kParamDraws; ++k) draws.push_back(random_params(rng, k % 3 == 0, k % 4 == 1));
  // Ricci-flat extensions so that the Einstein side is populated.
  SearchConfig cfg;
  cfg.seed = kCorpusSeed + 6;
  cfg.samples = 20;
  for (std::size_t d = 1; d <= 3; ++d) {
    cfg.dim_g0 = d;
    cfg.unimodular = d > 1;
    for (auto& c : generate(cfg).certificates) draws.push_back({c.params, false, false});
  }
  return draws;
}

const std::vector<ParamsDraw>& draws() {
  static const auto d = param_draws();
  return d;
}

void extension_jacobi(Outcome& o) {
  std::size_t admissible = 0, rejected = 0, h3 = 0;
  for (const auto& d : draws()) {
    const auto built = build(d.params);
    const bool jacobi = built.algebra().jacobi_defect().vanishes;
    const bool adm = admissibility(d.params).admissible;
    o.require(jacobi == adm, "Jacobi and admissibility disagree");
    (adm ? admissible : rejected) += 1;
    h3 += d.h3_base;
    if (!adm) continue;
    // H of the built algebra from its ad traces, against (mu + tr D) e + H0.
    const std::size_t n = d.params.base_dim();
    const auto& G = built.metric();
    const Vector<Rational> h = G.inverse() * ad_traces(built.algebra());
    const Vector<Rational> h0 = d.params.g0.metric().inverse() * ad_traces(d.params.g0.algebra());
    Vector<Rational> expected(n + 2);
    expected[0] = d.params.mu + d.params.D.trace();
    for (std::size_t i = 0; i < n; ++i) expected[1 + i] = h0[i];
    o.require(h == expected, "mean curvature formula");
    o.require(unimodularity(d.params).formula_holds, "library mean curvature check");
  }
  o.require(admissible > 0 && rejected > 0 && h3 > 0, "draws do not cover both outcomes and bases");
  o.detail << draws().size() << " draws: " << admissible << " admissible, " << rejected << " not, " << h3
           << " over the Heisenberg base";
}

void extension_einstein(Outcome& o) {
  std::size_t checked = 0, einstein = 0;
  for (const auto& d : draws()) {
    if (!admissibility(d.params).admissible) continue;
    ++checked;
    const bool conditions = einstein_conditions(d.params).einstein;
    const auto lambda = einstein_check(build(d.params));
    const bool zero = lambda && sgn(*lambda) == 0;
    o.require(conditions == zero, "Einstein conditions disagree with the built metric");
    einstein += conditions;
  }
  const Matrix<Rational> id = Matrix<Rational>::identity(2);
  const auto worked = abelian_params<Rational>(id, Matrix<Rational>{{0, 2}, {-2, 0}},
                                               Matrix<Rational>{{1, 0}, {0, -1}}, Rational(0), {0, 0});
  const auto built = build(worked);
  const auto r = ricci_direct(built);
  o.require(is_zero_matrix(r.ricci), "worked example is not Ricci-flat");
  o.require(is_zero_matrix(quadratic_form_ricci(built)), "worked example: quadratic-form oracle");
  o.require(einstein > 0, "no Einstein draws");
  o.detail << checked << " admissible draws, " << einstein << " Einstein; worked example Ric = 0";
}

// 7 -------------------------------------------------------------------------
void extraction_round_trip(Outcome& o) {
  Rng rng(kCorpusSeed + 7);
  std::vector<Certificate> certs;
  SearchConfig cfg;
  cfg.seed = kCorpusSeed + 7;
  cfg.samples = 50;
  for (std::size_t d = 2; d <= 4 && certs.size() < kRoundTrips; ++d) {
    cfg.dim_g0 = d;
    for (auto& c : generate(cfg).certificates)
      if (!c.flagged && certs.size() < kRoundTrips) certs.push_back(std::move(c));
  }
  o.require(certs.size() == kRoundTrips, "not enough certificates");
  std::size_t mode2 = 0;
  for (const auto& c : certs) {
    const auto p = in_basis(c.algebra, rng.unimodular(c.algebra.dim()));
    for (const auto mode : {ExtractMode::derived_degenerate, ExtractMode::center_degenerate}) {
      if (mode == ExtractMode::center_degenerate && sgn(c.params.mu) != 0) continue;
      const auto r = extract(p, mode);
      const auto& q = r.params;
      o.require(is_abelian(q.g0.algebra()), "base is not abelian");
      o.require(mode == ExtractMode::derived_degenerate ? q.mu == -q.D.trace() : sgn(q.mu) == 0, "mu");
      o.require(sgn(r.lambda) == 0, "lambda");
      for (const auto& f : r.facts) o.require(f.passed, f.name);
      // Oracle: the input in the extraction basis equals the rebuilt extension.
      const auto rebuilt = build(q);
      o.require(change_basis(p.algebra(), r.basis) == rebuilt.algebra(), "structure constants");
      o.require(r.basis.transpose() * p.metric().gram() * r.basis == rebuilt.metric().gram(), "metric");
      mode2 += mode == ExtractMode::center_degenerate;
    }
  }
  o.require(mode2 > 0, "no degenerate-center case");
  o.detail << certs.size() << " extensions (" << mode2 << " also through the center)";
}

// 8 -------------------------------------------------------------------------
void skew_maps(Outcome& o) {
  Rng rng(kCorpusSeed + 8);
  std::size_t null_image = 0, zero_trace = 0;
  for (std::size_t k = 0; k < kSkewDraws; ++k) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 6));
    const auto m = random_metric(rng, n, 1);
    const MetricTensor<Rational> g(m.gram);
    const auto e = random_isotropic(rng, m);
    o.require(sgn(dot(e, m.gram * e)) == 0, "e not null");
    const Matrix<Rational> g_inv = g.inverse();
    const Vector<Rational> ge = m.gram * e;
    // <x, e> = 0 and <x, w> for w in e-perp give the special skew maps
    // A x = <x,e> w - <x,w> e, which send e-perp into Re.
    Vector<Rational> w = rng.vector(n, 2);
    axpy(w, Rational(-dot(w, ge) / dot(ge, ge)), ge);  // w is Euclidean-orthogonal to ge: <w, e> = 0
    const Matrix<Rational> special = outer(w, ge) - outer(e, Vector<Rational>(m.gram * w));

    // Any skew A.
    Matrix<Rational> W = rng.matrix(n, 2);
    W = W - W.transpose();
    const Matrix<Rational> A = rng.coin(4) ? special : Matrix<Rational>(g_inv * W);
    o.require(is_skew_symmetric(A, g), "A is not skew");
    const Vector<Rational> ae = A * e;
    const Rational q = dot(ae, m.gram * ae);
    const bool in_line = rank(Matrix<Rational>::from_columns({e, ae}, n)) < 2;
    o.require(sgn(q) >= 0, "<Ae,Ae> < 0");
    o.require((sgn(q) == 0) == in_line, "<Ae,Ae> = 0 iff Ae in Re");

    // Skew A with Ae = 0, built from Euclidean-orthogonal pairs.
    auto killing_e = [&] {
      Matrix<Rational> acc(n, n);
      for (int t = 0; t < 2; ++t) {
        Vector<Rational> u = rng.vector(n, 2), v = rng.vector(n, 2);
        axpy(u, Rational(-dot(u, e) / dot(e, e)), e);
        axpy(v, Rational(-dot(v, e) / dot(e, e)), e);
        acc += outer(u, v) - outer(v, u);
      }
      return Matrix<Rational>(g_inv * acc);
    };
    const Matrix<Rational> A2 = rng.coin(3) ? special : killing_e();
    o.require(is_zero_vector(Vector<Rational>(A2 * e)), "A e != 0");
    const Rational t = (A2 * A2).trace();
    o.require(sgn(t) <= 0, "tr(A^2) > 0");
    if (sgn(t) == 0) {
      ++zero_trace;
      const auto perp = orthogonal_complement(Subspace<Rational>::span(n, {e}), g);
      const auto line = Subspace<Rational>::span(n, {e});
      for (const auto& x : perp.basis()) o.require(line.contains(Vector<Rational>(A2 * x)), "A(e-perp) not in Re");
      for (int s = 0; s < 3; ++s) o.require(sgn((A2 * killing_e()).trace()) == 0, "tr(AB) != 0");
    }
    null_image += sgn(q) == 0;
  }
  o.require(null_image > 0 && zero_trace > 0, "equality cases not exercised");
  o.detail << kSkewDraws << " draws, " << null_image << " with <Ae,Ae> = 0, " << zero_trace
           << " with tr(A^2) = 0";
}

// 9 -------------------------------------------------------------------------
void killing_sign(Outcome& o) {
  Rng rng(kCorpusSeed + 9);
  std::size_t certified = 0;
  for (const auto& [family, p] : corpus()) {
    const auto& L = p.algebra();
    if (is_completely_solvable(L).decision != Decision::yes) continue;
    ++certified;
    const auto B = killing_form(L);
    for (std::size_t i = 0; i < L.dim(); ++i) o.require(sgn(B(i, i)) >= 0, "B(e_i,e_i) < 0 on " + family);
    for (std::size_t k = 0; k < kKillingDraws; ++k) {
      const auto u = rng.vector(L.dim(), 3);
      o.require(sgn(dot(u, B * u)) >= 0, "B(u,u) < 0 on " + family);
    }
  }
  o.require(certified > 0, "no completely solvable members");
  o.detail << certified << " completely solvable members";
}

// 10 ------------------------------------------------------------------------
std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LORLIE_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_fixtures(Outcome& o, Clock::time_point start) {
  const std::filesystem::path dir(LORLIE_FIXTURES);
  std::size_t files = 0;
  const auto tmp = std::filesystem::temp_directory_path() / "lorlie_acceptance_ext.json";
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    const std::string text = read_file(entry.path());
    const Json j = parse_json(text);
    const std::string name = entry.path().filename().string();
    if (j.contains("g0")) {
      o.require(emit(std::visit([](const auto& p) { return to_json(p); }, params_from_json(j))) == text,
                "round trip " + name);
      o.require(run_cli("dextend " + entry.path().string() + " --out " + tmp.string()) == 0, "dextend " + name);
      o.require(run_cli("verify " + tmp.string()) == 0, "verify extension of " + name);
    } else {
      o.require(emit(std::visit([](const auto& f) { return to_json(f); }, algebra_from_json(j))) == text,
                "round trip " + name);
      o.require(run_cli("verify " + entry.path().string()) == 0, "verify " + name);
    }
  }
  std::filesystem::remove(tmp);
  o.require(files >= 8, "fixture set is incomplete");
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  o.require(elapsed < kRuntimeLimitSeconds, "suite runtime");
  o.detail << files << " fixtures; suite time " << elapsed << " s";
}

}  // namespace

int main() {
  const auto start = Clock::now();
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Ricci routes agree", ricci_routes},
      {2, "J1/J2 dual computation, tr J1 = tr J2", j_operators},
      {3, "tr(QE) identity and tr(QD) = 0", trace_identity},
      {4, "tr(Ric D) = 0 and lambda = 0 with nonzero-trace derivation", derivation_trace},
      {5, "extension Jacobi iff admissible; mean curvature formula", extension_jacobi},
      {6, "Einstein conditions iff Ricci-flat; worked example", extension_einstein},
      {7, "extraction round trip", extraction_round_trip},
      {8, "null vectors and skew maps", skew_maps},
      {9, "Killing form semi-definite on completely solvable", killing_sign},
      {10, "CLI fixtures round trip and verify", [&](Outcome& o) { cli_fixtures(o, start); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%s  %2d  %-58s %7.2fs  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
