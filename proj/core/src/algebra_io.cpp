#include "lorlie/algebra_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace lorlie {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::parse, (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

template <typename T>
T scalar_from(const Json& j, const std::string& where) {
  if constexpr (is_exact_v<T>) {
    if (j.is_string()) {
      try {
        return parse_rational(j.get<std::string>());
      } catch (const Error& e) {
        fail(where, e.what());
      }
    }
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    fail(where, "expected a rational string such as \"3/4\"");
  } else {
    if (j.is_number()) return j.get<double>();
    fail(where, "expected a number");
  }
}

template <typename T>
Vector<T> vector_from(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) fail(where, "expected an array of length " + std::to_string(n));
  Vector<T> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(scalar_from<T>(j[i], where + "/" + std::to_string(i)));
  return v;
}

template <typename T>
Matrix<T> matrix_from(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) fail(where, "expected " + std::to_string(n) + " rows");
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = vector_from<T>(j[i], n, where + "/" + std::to_string(i));
    for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
  }
  return m;
}

std::size_t index_from(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer index");
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim) fail(where, "index out of range 1.." + std::to_string(dim));
  return static_cast<std::size_t>(v - 1);
}

bool is_exact_mode(const Json& j, const std::string& where) {
  const Json& mode = field(j, "mode", where);
  if (mode == "exact") return true;
  if (mode == "float") return false;
  fail(where + "/mode", "expected \"exact\" or \"float\"");
}

template <typename T>
AlgebraFile<T> algebra_body(const Json& j, const std::string& where) {
  AlgebraFile<T> file;
  const Json& dim = field(j, "dim", where);
  if (!dim.is_number_integer() || dim.get<long long>() < 1) fail(where + "/dim", "expected a positive integer");
  file.dim = dim.get<std::size_t>();
  if (j.contains("metric")) {
    file.metric = matrix_from<T>(j["metric"], file.dim, where + "/metric");
    MetricTensor<T> check(*file.metric);  // symmetric and nondegenerate
  }
  const Json& brackets = field(j, "brackets", where);
  if (!brackets.is_array()) fail(where + "/brackets", "expected an array");
  std::map<std::pair<std::size_t, std::size_t>, bool> seen;
  for (std::size_t k = 0; k < brackets.size(); ++k) {
    const std::string at = where + "/brackets/" + std::to_string(k);
    const Json& entry = brackets[k];
    const std::size_t i = index_from(field(entry, "i", at), file.dim, at + "/i");
    const std::size_t jj = index_from(field(entry, "j", at), file.dim, at + "/j");
    if (i >= jj) fail(at, "brackets must have i < j");
    if (seen[{i, jj}]) fail(at, "duplicate bracket");
    seen[{i, jj}] = true;
    file.brackets.push_back({i, jj, vector_from<T>(field(entry, "coeffs", at), file.dim, at + "/coeffs")});
  }
  return file;
}

template <typename T>
Json algebra_json(const AlgebraFile<T>& file) {
  Json j;
  j["dim"] = file.dim;
  j["mode"] = is_exact_v<T> ? "exact" : "float";
  if (file.metric) j["metric"] = matrix_to_json(*file.metric);
  auto sorted = file.brackets;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  Json list = Json::array();
  for (const auto& br : sorted) {
    if (is_zero_vector(br.coeffs)) continue;
    list.push_back({{"i", br.i + 1}, {"j", br.j + 1}, {"coeffs", vector_to_json(br.coeffs)}});
  }
  j["brackets"] = std::move(list);
  return j;
}

template <typename T>
DoubleExtensionParams<T> params_body(const Json& j) {
  const AlgebraFile<T> g0 = algebra_body<T>(field(j, "g0", ""), "/g0");
  if (!g0.metric) fail("/g0", "missing key \"metric\"");
  const std::size_t n = g0.dim;
  DoubleExtensionParams<T> params{g0.metric_algebra(), matrix_from<T>(field(j, "K", ""), n, "/K"),
                                  matrix_from<T>(field(j, "D", ""), n, "/D"),
                                  scalar_from<T>(field(j, "mu", ""), "/mu"),
                                  vector_from<T>(field(j, "b", ""), n, "/b")};
  validate(params);
  return params;
}

}  // namespace

template <typename T>
LieAlgebra<T> AlgebraFile<T>::algebra() const {
  return LieAlgebra<T>::from_brackets(dim, brackets);
}

template <typename T>
LieAlgebra<T> AlgebraFile<T>::unchecked_algebra() const {
  return LieAlgebra<T>::from_brackets(typename LieAlgebra<T>::Unchecked{}, dim, brackets);
}

template <typename T>
PseudoEuclideanLieAlgebra<T> AlgebraFile<T>::metric_algebra() const {
  if (!metric) throw Error(ErrorKind::parse, "/metric: missing key \"metric\"");
  return PseudoEuclideanLieAlgebra<T>(algebra(), MetricTensor<T>(*metric));
}

template <typename T>
AlgebraFile<T> to_algebra_file(const LieAlgebra<T>& L, const std::optional<Matrix<T>>& metric) {
  AlgebraFile<T> file;
  file.dim = L.dim();
  file.metric = metric;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      auto c = L.bracket(i, j);
      if (!is_zero_vector(c)) file.brackets.push_back({i, j, std::move(c)});
    }
  return file;
}

template <typename T>
Json scalar_to_json(const T& x) {
  if constexpr (is_exact_v<T>) {
    return to_string(x);
  } else {
    return x;
  }
}

template <typename T>
Json vector_to_json(const Vector<T>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(scalar_to_json(x));
  return j;
}

template <typename T>
Json matrix_to_json(const Matrix<T>& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(vector_to_json(m.row(i)));
  return j;
}

template <typename T>
Json to_json(const AlgebraFile<T>& file) {
  return algebra_json(file);
}

template <typename T>
Json to_json(const DoubleExtensionParams<T>& params) {
  Json j;
  j["mode"] = is_exact_v<T> ? "exact" : "float";
  j["g0"] = algebra_json(to_algebra_file(params.g0));
  j["K"] = matrix_to_json(params.K);
  j["D"] = matrix_to_json(params.D);
  j["mu"] = scalar_to_json(params.mu);
  j["b"] = vector_to_json(params.b);
  return j;
}

Json to_json(const CertificateChecks& c) {
  return {{"jacobi", c.jacobi},
          {"unimodular", c.unimodular},
          {"einstein_conditions", c.einstein_conditions},
          {"ricci_zero", c.ricci_zero},
          {"completely_solvable", to_string(c.completely_solvable)},
          {"real_spectrum", c.real_spectrum},
          {"nonzero_trace_derivation", c.nonzero_trace_derivation}};
}

Json to_json(const Certificate& c) {
  return {{"index", c.index},
          {"flagged", c.flagged},
          {"params", to_json(c.params)},
          {"algebra", to_json(to_algebra_file(c.algebra))},
          {"checks", to_json(c.checks)}};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Byte offset to line:column.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::parse, std::to_string(line) + ":" + std::to_string(col) + ": syntax error");
  }
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json(buf.str());
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, path.string() + ":" + e.what());
  }
}

AnyAlgebraFile algebra_from_json(const Json& j) {
  if (is_exact_mode(j, "")) return algebra_body<Rational>(j, "");
  return algebra_body<double>(j, "");
}

AnyParams params_from_json(const Json& j) {
  if (is_exact_mode(j, "")) return params_body<Rational>(j);
  return params_body<double>(j);
}

std::string emit(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::parse, path.string() + ": cannot write file");
  out << text;
}

#define LORLIE_INSTANTIATE(T)                                                                          \
  template struct AlgebraFile<T>;                                                                      \
  template AlgebraFile<T> to_algebra_file(const LieAlgebra<T>&, const std::optional<Matrix<T>>&);      \
  template Json scalar_to_json(const T&);                                                              \
  template Json vector_to_json(const Vector<T>&);                                                      \
  template Json matrix_to_json(const Matrix<T>&);                                                      \
  template Json to_json(const AlgebraFile<T>&);                                                        \
  template Json to_json(const DoubleExtensionParams<T>&);

LORLIE_INSTANTIATE(Rational)
LORLIE_INSTANTIATE(double)

#undef LORLIE_INSTANTIATE

}  // namespace lorlie
