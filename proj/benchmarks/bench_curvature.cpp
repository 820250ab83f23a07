#include <benchmark/benchmark.h>

#include "lorlie/search.hpp"

using namespace lorlie;
using Q = Rational;

namespace {

PseudoEuclideanLieAlgebra<Q> worked() {
  return build(abelian_params<Q>(Matrix<Q>::identity(2), Matrix<Q>{{0, 2}, {-2, 0}}, Matrix<Q>{{1, 0}, {0, -1}},
                                 Q(0), {0, 0}));
}

/// R ⋉ R^(n-1) with a diagonal action, Euclidean metric.
template <typename T>
PseudoEuclideanLieAlgebra<T> almost_abelian(std::size_t n) {
  std::vector<typename LieAlgebra<T>::BracketEntry> brackets;
  for (std::size_t j = 1; j < n; ++j) {
    Vector<T> c(n, T(0));
    c[j] = T(static_cast<long>(j));
    brackets.push_back({0, j, c});
  }
  return {LieAlgebra<T>::from_brackets(n, brackets), MetricTensor<T>::euclidean(n)};
}

void BM_RicciDirectExact(benchmark::State& state) {
  const auto p = almost_abelian<Q>(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ricci_direct(p));
}
BENCHMARK(BM_RicciDirectExact)->DenseRange(3, 7, 2);

void BM_RicciOperatorExact(benchmark::State& state) {
  const auto p = almost_abelian<Q>(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ricci_operator_formula(p));
}
BENCHMARK(BM_RicciOperatorExact)->DenseRange(3, 7, 2);

void BM_RicciDirectFloat(benchmark::State& state) {
  const auto p = almost_abelian<double>(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ricci_direct(p));
}
BENCHMARK(BM_RicciDirectFloat)->DenseRange(3, 9, 2);

void BM_TraceIdentity(benchmark::State& state) {
  const auto p = worked();
  const TraceIdentityEvaluator<Q> eval(p);
  const Matrix<Q> e{{1, 2, 0, 0}, {0, 1, 3, 0}, {0, 0, 1, 4}, {5, 0, 0, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(eval(e));
}
BENCHMARK(BM_TraceIdentity);

void BM_Extract(benchmark::State& state) {
  const auto p = worked();
  for (auto _ : state) benchmark::DoNotOptimize(extract(p, ExtractMode::derived_degenerate));
}
BENCHMARK(BM_Extract);

void BM_Search(benchmark::State& state) {
  SearchConfig cfg;
  cfg.dim_g0 = static_cast<std::size_t>(state.range(0));
  cfg.samples = 4;
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(generate(cfg));
}
BENCHMARK(BM_Search)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
