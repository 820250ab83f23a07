#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lorlie/double_extension.hpp"
#include "lorlie/search.hpp"

namespace lorlie {

using Json = nlohmann::json;

/// Contents of an algebra file. Brackets are 0-based with i < j; the metric
/// is optional so that metric-free commands can read bare algebras.
template <typename T>
struct AlgebraFile {
  std::size_t dim = 0;
  std::optional<Matrix<T>> metric;
  std::vector<typename LieAlgebra<T>::BracketEntry> brackets;

  /// Throws not_a_lie_algebra when Jacobi fails.
  LieAlgebra<T> algebra() const;
  LieAlgebra<T> unchecked_algebra() const;
  /// Throws parse when the file has no metric.
  PseudoEuclideanLieAlgebra<T> metric_algebra() const;
};

using AnyAlgebraFile = std::variant<AlgebraFile<Rational>, AlgebraFile<double>>;

template <typename T>
AlgebraFile<T> to_algebra_file(const LieAlgebra<T>& L, const std::optional<Matrix<T>>& metric = std::nullopt);

template <typename T>
AlgebraFile<T> to_algebra_file(const PseudoEuclideanLieAlgebra<T>& p) {
  return to_algebra_file(p.algebra(), std::optional<Matrix<T>>(p.metric().gram()));
}

using AnyParams = std::variant<DoubleExtensionParams<Rational>, DoubleExtensionParams<double>>;

// Scalars are "p" or "p/q" strings in exact mode and JSON numbers in float
// mode. Parse errors throw Error(parse) with a JSON pointer or line:column.

template <typename T>
Json scalar_to_json(const T& x);
template <typename T>
Json vector_to_json(const Vector<T>& v);
template <typename T>
Json matrix_to_json(const Matrix<T>& m);

template <typename T>
Json to_json(const AlgebraFile<T>& file);
template <typename T>
Json to_json(const DoubleExtensionParams<T>& params);

Json to_json(const CertificateChecks& checks);
Json to_json(const Certificate& certificate);

/// Syntax errors report line and column.
Json parse_json(std::string_view text);
Json load_json(const std::filesystem::path& path);

AnyAlgebraFile algebra_from_json(const Json& j);
AnyParams params_from_json(const Json& j);

/// Two-space indentation, sorted keys, trailing newline.
std::string emit(const Json& j);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lorlie
