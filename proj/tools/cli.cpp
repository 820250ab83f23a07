#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "lorlie/algebra_io.hpp"

namespace lorlie::cli {

namespace {

/// Unwinds to run() with a fixed exit code after the message was printed.
struct Exit {
  int code;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::degenerate_metric:
    case ErrorKind::shape_mismatch:
    case ErrorKind::singular_matrix:
      return parse_error;
    case ErrorKind::not_a_lie_algebra:
      return not_a_lie_algebra;
    case ErrorKind::cross_check_mismatch:
    case ErrorKind::singular_basis:
      return cross_check_mismatch;
    case ErrorKind::not_isotropic:
    case ErrorKind::not_lorentzian:
    case ErrorKind::hypothesis_failed:
    case ErrorKind::nondegenerate_subspace:
    case ErrorKind::not_admissible:
    case ErrorKind::requires_exact_mode:
      return hypothesis_failed;
  }
  return cross_check_mismatch;
}

template <typename T>
std::string scalar_text(const T& x) {
  const Json j = scalar_to_json(x);
  return j.is_string() ? j.get<std::string>() : j.dump();
}

struct Output {
  std::ostream& out;
  std::ostream& err;
  std::string path;

  void write(const Json& j) const {
    if (path.empty()) {
      out << emit(j);
    } else {
      write_text(path, emit(j));
    }
  }
};

template <typename T>
LieAlgebra<T> checked_algebra(const AlgebraFile<T>& file, std::ostream& err) {
  const auto L = file.unchecked_algebra();
  const auto defect = L.jacobi_defect();
  if (!defect.vanishes) {
    std::ostringstream v;
    for (std::size_t k = 0; k < defect.defect.size(); ++k)
      v << (k ? ", " : "") << scalar_text(defect.defect[k]);
    err << "error: not a Lie algebra: Jacobi sum on (e" << defect.i + 1 << ", e" << defect.j + 1 << ", e"
        << defect.k + 1 << ") is [" << v.str() << "]\n";
    throw Exit{not_a_lie_algebra};
  }
  return file.algebra();
}

template <typename T>
PseudoEuclideanLieAlgebra<T> checked_metric_algebra(const AlgebraFile<T>& file, std::ostream& err) {
  auto L = checked_algebra(file, err);
  if (!file.metric) throw Error(ErrorKind::parse, "/metric: missing key \"metric\"");
  return PseudoEuclideanLieAlgebra<T>(std::move(L), MetricTensor<T>(*file.metric));
}

Json optional_length(const std::optional<std::size_t>& n) { return n ? Json(*n) : Json(nullptr); }

template <typename T>
Json flags_json(const ClassificationFlags<T>& f) {
  return {{"abelian", f.abelian},
          {"nilpotent", f.nilpotent},
          {"solvable", f.solvable},
          {"completely_solvable", to_string(f.completely_solvable)},
          {"unimodular", f.unimodular},
          {"derived_series_length", optional_length(f.derived_series_length)},
          {"lower_central_length", optional_length(f.lower_central_length)}};
}

template <typename T>
Json flag_json(const CompleteSolvability<T>& cs) {
  Json chain = Json::array();
  for (const auto& ideal : cs.flag) {
    Json basis = Json::array();
    for (const auto& v : ideal.basis()) basis.push_back(vector_to_json(v));
    chain.push_back(std::move(basis));
  }
  return {{"ideals", std::move(chain)}, {"complete", cs.certificate_complete}};
}

template <typename T>
Json optional_scalar(const std::optional<T>& x) {
  return x ? scalar_to_json(*x) : Json(nullptr);
}

// classify ------------------------------------------------------------------

template <typename T>
int classify_cmd(const AlgebraFile<T>& file, const Output& o) {
  const auto L = checked_algebra(file, o.err);
  const auto flags = classify(L);
  Json series = Json::array();
  for (const auto& s : derived_series(L)) series.push_back(s.dim());
  Json lower = Json::array();
  for (const auto& s : lower_central_series(L)) lower.push_back(s.dim());
  Json report;
  report["flags"] = flags_json(flags);
  report["witnesses"] = {{"derived_series_dims", series},
                         {"lower_central_series_dims", lower},
                         {"center_dim", center(L).dim()},
                         {"ad_traces", vector_to_json(ad_traces(L))},
                         {"flag_of_ideals", flag_json(flags.flag)}};
  o.write(report);
  return ok;
}

// ricci ---------------------------------------------------------------------

template <typename T>
int ricci_cmd(const AlgebraFile<T>& file, const std::string& method, const Output& o) {
  const auto p = checked_metric_algebra(file, o.err);
  const bool direct = method != "operator";
  const bool formula = method != "direct";
  std::optional<CurvatureReport<T>> a, b;
  if (direct) a = ricci_direct(p);
  if (formula) b = ricci_operator_formula(p);
  const CurvatureReport<T>& r = a ? *a : *b;

  Json report;
  report["flags"] = flags_json(classify(p.algebra()));
  report["flags"]["flat"] = r.flat;
  report["flags"]["ricci_flat"] = r.ricci_flat;
  report["flags"]["einstein"] = r.einstein;
  report["ricci"] = matrix_to_json(r.ricci);
  report["einstein_lambda"] = optional_scalar(r.einstein_lambda);
  const auto ops = operators(p);
  report["witnesses"] = {{"H", vector_to_json(r.mean_curvature)},
                         {"ric", matrix_to_json(r.ric)},
                         {"trJ1", scalar_to_json(ops.j1.trace())},
                         {"trJ2", scalar_to_json(ops.j2.trace())},
                         {"method", method}};
  int code = ok;
  if (a && b) {
    const auto c = ricci_from_r_operators(p);
    const bool agree = approx_equal(a->ricci, b->ricci) && approx_equal(a->ricci, c.ricci);
    report["witnesses"]["routes_agree"] = agree;
    if (!agree) {
      o.err << "error: Ricci routes disagree\n";
      code = cross_check_mismatch;
    }
  }
  o.write(report);
  return code;
}

// dextend -------------------------------------------------------------------

template <typename T>
int dextend_cmd(const DoubleExtensionParams<T>& params, const Output& o) {
  const auto adm = admissibility(params);
  const auto built = build(params);
  const auto file = to_algebra_file(built);
  checked_algebra(file, o.err);
  const auto p = PseudoEuclideanLieAlgebra<T>(file.algebra(), built.metric());
  const auto ricci = ricci_direct(p);
  const auto cond = einstein_conditions(params);
  const auto uni = unimodularity(params);

  Json j = to_json(file);
  j["report"] = {{"admissible", adm.admissible},
                 {"unimodular", uni.unimodular},
                 {"mean_curvature_formula", uni.formula_holds},
                 {"einstein_conditions", cond.einstein},
                 {"einstein", ricci.einstein},
                 {"einstein_lambda", optional_scalar(ricci.einstein_lambda)},
                 {"ricci_flat", ricci.ricci_flat},
                 {"dext1_residual", scalar_to_json(cond.dext1_residual)}};
  o.write(j);
  // The conditions and the curvature must agree on Einstein.
  const bool lambda_zero = ricci.einstein_lambda && is_zero(*ricci.einstein_lambda);
  if (cond.einstein != lambda_zero || !uni.formula_holds) {
    o.err << "error: Einstein conditions and curvature disagree\n";
    return cross_check_mismatch;
  }
  return ok;
}

// extract -------------------------------------------------------------------

int extract_cmd(const AlgebraFile<Rational>& file, ExtractMode mode, const Output& o) {
  const auto p = checked_metric_algebra(file, o.err);
  const auto res = extract(p, mode);
  Json j = to_json(res.params);
  Json facts = Json::object();
  bool all = true;
  for (const auto& f : res.facts) {
    facts[f.name] = f.passed;
    all = all && f.passed;
  }
  j["report"] = {{"mode", to_string(mode)},
                 {"basis", matrix_to_json(res.basis)},
                 {"lambda", scalar_to_json(res.lambda)},
                 {"facts", facts},
                 {"round_trip", res.round_trip}};
  o.write(j);
  if (!all || !res.round_trip) {
    o.err << "error: extraction did not reproduce the input\n";
    return cross_check_mismatch;
  }
  return ok;
}

// search --------------------------------------------------------------------

int search_cmd(const SearchConfig& cfg, const Output& o) {
  const auto result = generate(cfg);
  Json certs = Json::array();
  for (const auto& c : result.certificates) certs.push_back(to_json(c));
  Json j = {{"config",
             {{"dim_g0", cfg.dim_g0},
              {"seed", cfg.seed},
              {"samples", cfg.samples},
              {"entry_bound", cfg.entry_bound},
              {"unimodular", cfg.unimodular}}},
            {"certificates", std::move(certs)},
            {"rejected", result.rejected},
            {"empty_flagged", result.empty_flagged},
            {"note", result.note}};
  o.write(j);
  return ok;
}

// verify --------------------------------------------------------------------

enum class Status { pass, fail, skip, info };

struct Row {
  Status status;
  std::string name;
  std::string detail;
};

class Table {
 public:
  void add(bool passed, std::string name, std::string detail = {}) {
    rows_.push_back({passed ? Status::pass : Status::fail, std::move(name), std::move(detail)});
  }
  void skip(std::string name, std::string why) { rows_.push_back({Status::skip, std::move(name), std::move(why)}); }
  void info(std::string name, std::string detail) {
    rows_.push_back({Status::info, std::move(name), std::move(detail)});
  }

  bool all_passed() const {
    return std::none_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.status == Status::fail; });
  }

  void print(std::ostream& os) const {
    std::size_t width = 0;
    for (const auto& r : rows_) width = std::max(width, r.name.size());
    for (const auto& r : rows_) {
      static const char* tags[] = {"PASS", "FAIL", "SKIP", "INFO"};
      os << tags[static_cast<int>(r.status)] << "  ";
      if (r.detail.empty()) {
        os << r.name;
      } else {
        os << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << r.detail;
      }
      os << '\n';
    }
    os << (all_passed() ? "all applicable checks passed" : "some checks FAILED") << '\n';
  }

  Json to_json() const {
    Json j = Json::array();
    static const char* tags[] = {"pass", "fail", "skip", "info"};
    for (const auto& r : rows_)
      j.push_back({{"check", r.name}, {"status", tags[static_cast<int>(r.status)]}, {"detail", r.detail}});
    return j;
  }

 private:
  std::vector<Row> rows_;
};

template <typename T>
bool scalar_equal(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return is_zero(a - b, std::max({1.0, magnitude(a), magnitude(b)}));
  }
}

template <typename T>
void verify_connection(const PseudoEuclideanLieAlgebra<T>& p, Table& t) {
  const std::size_t n = p.dim();
  const auto L = levi_civita_operators(p);
  bool torsion = true, metric = true;
  for (std::size_t i = 0; i < n; ++i) {
    metric = metric && is_skew_symmetric(L[i], p.metric());
    for (std::size_t j = 0; j < n; ++j) {
      const auto lhs = subtract(L[i].column(j), L[j].column(i));
      const auto rhs = p.algebra().bracket(i, j);
      torsion = torsion && is_zero_vector(subtract(lhs, rhs), 1.0 + max_magnitude(rhs));
    }
  }
  t.add(torsion, "Levi-Civita product is torsion-free");
  t.add(metric, "Levi-Civita operators are skew");
}

template <typename T>
void verify_curvature(const PseudoEuclideanLieAlgebra<T>& p, Table& t) {
  const auto a = ricci_direct(p);
  const auto b = ricci_from_r_operators(p);
  const auto c = ricci_operator_formula(p);
  t.add(approx_equal(a.ricci, b.ricci), "Ricci: curvature trace = R-operator formula");
  t.add(approx_equal(a.ricci, c.ricci), "Ricci: curvature trace = operator formula");

  const auto ops = operators(p);
  const auto dual = operators_from_structure_endos(p, structure_endos(p));
  t.add(approx_equal(ops.j1, dual.j1) && approx_equal(ops.j2, dual.j2),
        "J1, J2: defining traces = structure endomorphisms");
  t.add(scalar_equal<T>(ops.j1.trace(), ops.j2.trace()), "tr J1 = tr J2");

  const std::size_t n = p.dim();
  const TraceIdentityEvaluator<T> eval(p);
  bool identity = true;
  {
    const auto r = eval(Matrix<T>::identity(n));
    identity = identity && scalar_equal(r.lhs, r.rhs);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<T> e(n, n);
      e(i, j) = T(1);
      const auto r = eval(e);
      identity = identity && scalar_equal(r.lhs, r.rhs);
    }
  t.add(identity, "tr(QE) identity on Id and all elementary E");

  const auto ders = derivation_space(p.algebra());
  const auto q = q_operator(ops);
  bool q_der = true;
  for (const auto& d : ders) q_der = q_der && scalar_equal<T>((q * d).trace(), T(0));
  t.add(q_der, "tr(QD) = 0 for derivations", std::to_string(ders.size()) + " basis derivations");

  const bool unimodular = is_unimodular(p.algebra());
  if (unimodular) {
    bool ric_der = true;
    for (const auto& d : ders) ric_der = ric_der && scalar_equal<T>((a.ricci * d).trace(), T(0));
    t.add(ric_der, "tr(Ric D) = 0 for derivations (unimodular)");
  } else {
    t.skip("tr(Ric D) = 0 for derivations (unimodular)", "not unimodular");
  }

  bool trace_der = false;
  for (const auto& d : ders) trace_der = trace_der || !is_zero(d.trace(), 1.0 + d.max_magnitude());
  if (a.einstein_lambda) {
    t.info("Einstein", "lambda = " + scalar_text(*a.einstein_lambda));
  } else {
    t.info("Einstein", "none");
  }
  if (unimodular && a.einstein && trace_der) {
    t.add(is_zero(*a.einstein_lambda), "Einstein + nonzero-trace derivation => lambda = 0");
  } else {
    t.skip("Einstein + nonzero-trace derivation => lambda = 0",
           !unimodular ? "not unimodular" : !a.einstein ? "not Einstein" : "no derivation of nonzero trace");
  }
}

template <typename T>
void verify_solvability(const PseudoEuclideanLieAlgebra<T>& p, Table& t) {
  const auto& L = p.algebra();
  const auto cs = is_completely_solvable(L);
  if (cs.decision != Decision::yes) {
    const std::string why = cs.decision == Decision::no ? "not completely solvable" : "requires exact mode";
    t.skip("Killing form is positive semi-definite", why);
    t.skip("flag of ideals is invariant and triangularizes ad", why);
    return;
  }
  const auto diag = congruence_diagonalize(killing_form(L));
  const bool psd = std::all_of(diag.diagonal.begin(), diag.diagonal.end(), [](const T& d) { return sign(d) >= 0; });
  t.add(psd, "Killing form is positive semi-definite");
  if (!cs.certificate_complete) {
    t.skip("flag of ideals is invariant and triangularizes ad", "irrational weight, partial certificate");
    return;
  }
  const std::size_t n = L.dim();
  bool sound = cs.flag.size() == n;
  std::vector<Vector<T>> adapted;
  for (std::size_t i = 0; sound && i < n; ++i) {
    sound = cs.flag[i].dim() == i + 1 && is_ideal(L, cs.flag[i]);
    if (!sound) break;
    for (const auto& v : cs.flag[i].basis())
      if (!Subspace<T>::span(n, adapted).contains(v)) {
        adapted.push_back(v);
        break;
      }
  }
  if (sound && adapted.size() == n) {
    const auto m = Matrix<T>::from_columns(adapted, n);
    const auto adapted_algebra = change_basis(L, m);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c) sound = sound && is_zero(adapted_algebra.ad(u)(r, c));
  }
  t.add(sound, "flag of ideals is invariant and triangularizes ad");
}

template <typename T>
void verify_lorentzian(const PseudoEuclideanLieAlgebra<T>& p, Table& t) {
  if (!p.metric().signature().is_lorentzian()) {
    t.skip("nondegenerate center", "metric is not Lorentzian");
    t.skip("extraction", "metric is not Lorentzian");
    return;
  }
  try {
    const auto r = verify_nondegenerate_center_prop(p);
    for (const auto& s : r.steps) t.add(s.passed, "nondegenerate center: " + s.name);
  } catch (const HypothesisFailed& h) {
    t.skip("nondegenerate center", "hypothesis fails: " + h.hypothesis());
  }
  if constexpr (!is_exact_v<T>) {
    t.skip("extraction", "requires exact mode");
  } else {
    for (const auto mode : {ExtractMode::derived_degenerate, ExtractMode::center_degenerate}) {
      const std::string name = std::string("extraction (") + to_string(mode) + ")";
      try {
        const auto r = extract(p, mode);
        for (const auto& f : r.facts) t.add(f.passed, name + ": " + f.name);
        t.add(r.round_trip, name + ": round trip");
      } catch (const HypothesisFailed& h) {
        t.skip(name, "hypothesis fails: " + h.hypothesis());
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::nondegenerate_subspace) throw;
        t.skip(name, e.what());
      }
    }
  }
}

template <typename T>
int verify_cmd(const AlgebraFile<T>& file, bool json, const Output& o) {
  Table t;
  const auto L = checked_algebra(file, o.err);
  t.add(true, "Jacobi identity");
  if (!file.metric) {
    PseudoEuclideanLieAlgebra<T> flat_metric(L, MetricTensor<T>::euclidean(L.dim()));
    t.info("metric", "absent; metric-free checks only");
    verify_solvability(flat_metric, t);
  } else {
    const PseudoEuclideanLieAlgebra<T> p(L, MetricTensor<T>(*file.metric));
    const auto sig = p.metric().signature();
    t.info("signature", "(" + std::to_string(sig.negative) + ", " + std::to_string(sig.positive) + ")");
    verify_connection(p, t);
    verify_curvature(p, t);
    verify_solvability(p, t);
    verify_lorentzian(p, t);
  }
  if (json) {
    o.write({{"checks", t.to_json()}, {"passed", t.all_passed()}});
  } else {
    std::ostringstream text;
    t.print(text);
    if (o.path.empty()) {
      o.out << text.str();
    } else {
      write_text(o.path, text.str());
    }
  }
  return t.all_passed() ? ok : cross_check_mismatch;
}

AnyAlgebraFile read_algebra(const std::string& path) { return algebra_from_json(load_json(path)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature of Lorentzian Lie algebras and double extensions", "lorlie"};
  app.require_subcommand(1);

  std::string path, out_path, method = "both", mode_name;
  bool json = false;
  std::optional<std::uint64_t> seed;
  SearchConfig cfg;
  bool non_unimodular = false;

  auto* classify_app = app.add_subcommand("classify", "Structure flags of an algebra file");
  classify_app->add_option("path", path, "algebra file")->required();
  classify_app->add_option("--out", out_path, "write the report here");

  auto* ricci_app = app.add_subcommand("ricci", "Ricci operator of a metric algebra file");
  ricci_app->add_option("path", path, "algebra file")->required();
  ricci_app->add_option("--method", method, "direct, operator or both")
      ->check(CLI::IsMember({"direct", "operator", "both"}));
  ricci_app->add_option("--out", out_path, "write the report here");

  auto* dextend_app = app.add_subcommand("dextend", "Build the double extension of a params file");
  dextend_app->add_option("path", path, "params file")->required();
  dextend_app->add_option("--out", out_path, "write the algebra file here");

  auto* extract_app = app.add_subcommand("extract", "Recover double-extension params");
  extract_app->add_option("path", path, "algebra file")->required();
  extract_app->add_option("--mode", mode_name, "derived_degenerate or center_degenerate")
      ->required()
      ->check(CLI::IsMember({"derived_degenerate", "center_degenerate"}));
  extract_app->add_option("--out", out_path, "write the params file here");

  auto* search_app = app.add_subcommand("search", "Generate certified Ricci-flat extensions");
  search_app->add_option("--seed", seed, "random seed");
  search_app->add_option("--samples", cfg.samples, "number of samples")->check(CLI::PositiveNumber);
  search_app->add_option("--dim", cfg.dim_g0, "dimension of the abelian base")->check(CLI::PositiveNumber);
  search_app->add_option("--entry-bound", cfg.entry_bound, "bound on numerators and denominators")
      ->check(CLI::PositiveNumber);
  search_app->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  search_app->add_flag("--non-unimodular", non_unimodular, "draw mu freely");
  search_app->add_option("--out", out_path, "write the certificates here");

  auto* verify_app = app.add_subcommand("verify", "Run every applicable check on an algebra file");
  verify_app->add_option("path", path, "algebra file")->required();
  verify_app->add_flag("--json", json, "machine-readable output");
  verify_app->add_option("--out", out_path, "write the table here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  const Output o{out, err, out_path};
  try {
    if (*classify_app) {
      return std::visit([&](const auto& f) { return classify_cmd(f, o); }, read_algebra(path));
    }
    if (*ricci_app) {
      return std::visit([&](const auto& f) { return ricci_cmd(f, method, o); }, read_algebra(path));
    }
    if (*dextend_app) {
      return std::visit([&](const auto& p) { return dextend_cmd(p, o); }, params_from_json(load_json(path)));
    }
    if (*extract_app) {
      const auto file = read_algebra(path);
      if (!std::holds_alternative<AlgebraFile<Rational>>(file)) {
        throw Error(ErrorKind::requires_exact_mode, "extract requires an exact-mode file");
      }
      const auto mode =
          mode_name == "derived_degenerate" ? ExtractMode::derived_degenerate : ExtractMode::center_degenerate;
      return extract_cmd(std::get<AlgebraFile<Rational>>(file), mode, o);
    }
    if (*search_app) {
      if (!seed) {
        const char* ci = std::getenv("LORLIE_CI");
        if (ci && std::string(ci) == "1") {
          err << "error: --seed is required when LORLIE_CI=1\n";
          return usage;
        }
        err << "warning: no --seed given, using 0\n";
      }
      cfg.seed = seed.value_or(0);
      cfg.unimodular = !non_unimodular;
      return search_cmd(cfg, o);
    }
    if (*verify_app) {
      return std::visit([&](const auto& f) { return verify_cmd(f, json, o); }, read_algebra(path));
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return usage;
}

}  // namespace lorlie::cli
