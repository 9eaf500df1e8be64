#include "fusionopt/fusionopt.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace fusionopt;

namespace {

FusionFrame random_frame(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> g;
  std::vector<FusionMember> members;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Vector> vs;
    for (std::size_t k = 0; k < 1 + i % (n - 1); ++k) {
      Vector v(n);
      for (std::size_t c = 0; c < n; ++c) v[c] = g(eng);
      vs.push_back(v);
    }
    members.push_back({orthonormal_basis(n, vs), 1.0 + 0.1 * static_cast<double>(i % 3)});
  }
  // Guarantee spanning.
  members.push_back({Subspace::full(n), 1.0});
  return FusionFrame(n, std::move(members));
}

void BM_SymmetricEigen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = frame_operator(random_frame(n, 6, 1));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigen(s));
}
BENCHMARK(BM_SymmetricEigen)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_FrameOperator(benchmark::State& state) {
  const auto w = random_frame(8, static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(frame_operator(w));
}
BENCHMARK(BM_FrameOperator)->Arg(4)->Arg(16)->Arg(64);

void BM_CanonicalPair(benchmark::State& state) {
  const auto w = random_frame(static_cast<std::size_t>(state.range(0)), 8, 3);
  for (auto _ : state) benchmark::DoNotOptimize(DualPair::canonical(w));
}
BENCHMARK(BM_CanonicalPair)->Arg(4)->Arg(8)->Arg(16);

void BM_WorstCase(benchmark::State& state) {
  const auto pair = DualPair::canonical(random_frame(6, static_cast<std::size_t>(state.range(0)), 4));
  const auto r = static_cast<std::size_t>(state.range(1));
  const auto kind = state.range(2) ? NormKind::operator_norm : NormKind::frobenius;
  for (auto _ : state) benchmark::DoNotOptimize(worst_case_error(pair, r, kind));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * binomial(pair.size(), r)));
}
BENCHMARK(BM_WorstCase)->Args({12, 1, 0})->Args({12, 3, 0})->Args({12, 3, 1})->Args({20, 4, 0});

void BM_CanonicalCertificate(benchmark::State& state) {
  const auto w = random_frame(6, static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(certify_canonical_optimal(w));
}
BENCHMARK(BM_CanonicalCertificate)->Arg(4)->Arg(12);

}  // namespace
BENCHMARK_MAIN();
