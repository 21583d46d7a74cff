#include <benchmark/benchmark.h>

#include "normlab/champernowne.hpp"
#include "normlab/counting.hpp"
#include "normlab/grid.hpp"
#include "normlab/sampler.hpp"

using namespace normlab;

namespace {

const BitSeq& seq() {
  static const BitSeq x = bernoulli_seq(1, std::size_t{1} << 22);
  return x;
}

void BM_BlockCountsAdditive(benchmark::State& st, bool parallel) {
  const auto F = FiniteSet::range(1, std::size_t{1} << 20);
  const auto K = FiniteSet::range(1, static_cast<Nat>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(parallel ? block_counts_parallel(seq(), F, K, Semigroup::Additive)
                                      : block_counts_serial(seq(), F, K, Semigroup::Additive));
}

void BM_BlockCountsMultiplicative(benchmark::State& st, bool parallel) {
  const auto F = FolnerSpec::nice_boxes(DirectionSchedule::staircase()).set(12);
  const auto K = FiniteSet::from_sorted({1, 2, 3});
  for (auto _ : st)
    benchmark::DoNotOptimize(parallel ? block_counts_parallel(seq(), F, K, Semigroup::Multiplicative)
                                      : block_counts_serial(seq(), F, K, Semigroup::Multiplicative));
}

void BM_WindowCounts(benchmark::State& st, Exec ex) {
  const auto K = FiniteSet::range(1, static_cast<Nat>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(window_counts(seq(), std::size_t{1} << 21, K, ex));
}

void BM_GridCounts(benchmark::State& st, bool parallel) {
  const AnchoredBox field_box({64, 32, 16, 8});
  static const GridBlock field = bernoulli_grid(1, field_box);
  const std::vector<ExpVec> K{ExpVec{}, ExpVec{1}, ExpVec{0, 1}};
  const auto core = grid_core(field_box, K);
  for (auto _ : st)
    benchmark::DoNotOptimize(parallel ? grid_counts_parallel(field, core.box, K)
                                      : grid_counts_serial(field, core.box, K));
}

}  // namespace

BENCHMARK_CAPTURE(BM_BlockCountsAdditive, serial, false)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(BM_BlockCountsAdditive, parallel, true)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(BM_BlockCountsMultiplicative, serial, false);
BENCHMARK_CAPTURE(BM_BlockCountsMultiplicative, parallel, true);
BENCHMARK_CAPTURE(BM_WindowCounts, serial, Exec::Serial)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(BM_WindowCounts, parallel, Exec::Parallel)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(BM_GridCounts, serial, false);
BENCHMARK_CAPTURE(BM_GridCounts, parallel, true);

BENCHMARK_MAIN();
