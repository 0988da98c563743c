// Serial reference kernels against their OpenMP versions.
//
//   ./bench_kernels --benchmark_filter=rank
//   OMP_NUM_THREADS=8 ./bench_kernels

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "fatpoints/generate.hpp"
#include "fatpoints/kernels.hpp"
#include "fatpoints/random.hpp"
#include "fatpoints/scheme.hpp"

using namespace fatpoints;
using kernels::ModMatrix;

namespace {

const ModArith& arith() {
  static const ModArith ar(kDefaultPrime);
  return ar;
}

ModMatrix random_mod(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  ModMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<std::uint32_t>(rng.next() % arith().modulus());
  }
  return m;
}

// Generic double points in P^4 at their regularity degree.
const ConditionColumns& conditions(std::size_t s) {
  static std::map<std::size_t, std::unique_ptr<ConditionColumns>> cache;
  auto& slot = cache[s];
  if (!slot) {
    GenSpec g;
    g.family = Family::generic;
    g.n = 4;
    g.s = s;
    g.m = 3;
    g.seed = 7;
    const auto z = generate(g).reduced_to(Field::prime());
    slot = std::make_unique<ConditionColumns>(z, regularity_index(z, false));
  }
  return *slot;
}

void BM_rank_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const ModMatrix m = random_mod(n, n, 1);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::rank_mod_serial(m, arith()));
}

void BM_rank_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const ModMatrix m = random_mod(n, n, 1);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::rank_mod(m, arith()));
}

void BM_rref_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const ModMatrix m = random_mod(n, 2 * n, 2);
  for (auto _ : st) {
    ModMatrix a = m;
    benchmark::DoNotOptimize(kernels::rref_mod_serial(a, arith()).rank);
  }
}

void BM_rref_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const ModMatrix m = random_mod(n, 2 * n, 2);
  for (auto _ : st) {
    ModMatrix a = m;
    benchmark::DoNotOptimize(kernels::rref_mod(a, arith()).rank);
  }
}

void BM_wide_rank_serial(benchmark::State& st) {
  const auto& src = conditions(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::wide_rank_mod_serial(src, arith()).rank);
  st.counters["rows"] = static_cast<double>(src.rows());
  st.counters["cols"] = static_cast<double>(src.cols());
}

void BM_wide_rank_parallel(benchmark::State& st) {
  const auto& src = conditions(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::wide_rank_mod(src, arith()).rank);
  st.counters["rows"] = static_cast<double>(src.rows());
  st.counters["cols"] = static_cast<double>(src.cols());
}

}  // namespace

BENCHMARK(BM_rank_serial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_parallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_serial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_parallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wide_rank_serial)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wide_rank_parallel)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
