// Microbenchmarks contrasting the memoized recursion against the
// permutation-sum oracle, plus the norm-moment routes and the Monte Carlo
// sampler. The oracle costs m! per word, the recursion is polynomial in the
// cache; the gap (informally >= 10x by length 8) is the reason the oracle is
// reserved for verification.

#include <benchmark/benchmark.h>

#include <wmm/moments.hpp>
#include <wmm/oracles.hpp>

namespace {

wmm::MultiIndex bench_word(int m) {
  wmm::MultiIndex v(static_cast<std::size_t>(m), 0);
  if (m > 1) v.back() = 1;
  return v;
}

void BM_MomentRecursive(benchmark::State& state) {
  const wmm::MultiIndex v = bench_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    wmm::MomentEngine engine{wmm::Caps{}};  // fresh cache: no memoization carryover
    benchmark::DoNotOptimize(engine.moment_recursive(v));
  }
}

void BM_PermutationOracle(benchmark::State& state) {
  const wmm::MultiIndex v = bench_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmm::letac_matrix(v));
  }
}

void BM_NormMomentBell(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    wmm::MomentEngine engine{wmm::Caps{}};
    benchmark::DoNotOptimize(engine.norm_moment_symbolic(n, wmm::NormMethod::bell));
  }
}

void BM_NormMomentPermutation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    wmm::MomentEngine engine{wmm::Caps{}};
    benchmark::DoNotOptimize(engine.norm_moment_symbolic(n, wmm::NormMethod::permutation));
  }
}

void BM_MonteCarlo(benchmark::State& state) {
  const wmm::CovarianceContext ctx(
      wmm::RatMatrix::diagonal({wmm::Rational(1), wmm::Rational(2)}));
  wmm::MCConfig cfg;
  cfg.samples = state.range(0);
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmm::monte_carlo_M(ctx, {0, 1}, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_MomentRecursive)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PermutationOracle)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NormMomentBell)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NormMomentPermutation)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
