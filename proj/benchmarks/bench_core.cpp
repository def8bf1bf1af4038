#include <benchmark/benchmark.h>

#include <random>

#include "nccw/exacthom.hpp"
#include "nccw/ssengine.hpp"
#include "oracles.hpp"

namespace {

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const nccw::IntMatrix m = nccw::testing::random_matrix(rng, n, n, 9);
  for (auto _ : state) benchmark::DoNotOptimize(nccw::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_Cohomology(benchmark::State& state) {
  std::mt19937 rng(2);
  std::vector<nccw::CochainComplex> complexes;
  for (int i = 0; i < 64; ++i) complexes.push_back(nccw::testing::random_complex(rng, 3, 4, 3));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(nccw::cohomology(complexes[i++ % complexes.size()]));
}
BENCHMARK(BM_Cohomology);

void BM_SpectralSequenceToStable(benchmark::State& state) {
  std::mt19937 rng(3);
  std::vector<nccw::CochainComplex> complexes;
  for (int i = 0; i < 64; ++i) complexes.push_back(nccw::testing::random_complex(rng, 3, 4, 3));
  std::size_t i = 0;
  for (auto _ : state) {
    nccw::SpectralSequence ss =
        nccw::SpectralSequence::from_cellular(complexes[i++ % complexes.size()], nccw::Theory::k);
    benchmark::DoNotOptimize(ss.e_infinity());
  }
}
BENCHMARK(BM_SpectralSequenceToStable);

}  // namespace

BENCHMARK_MAIN();
