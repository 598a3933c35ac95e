#include <benchmark/benchmark.h>

#include "spbzo/catalog.hpp"
#include "spbzo/smoothing.hpp"

using namespace spbzo;

namespace {

void BM_TwoPointGradient(benchmark::State& state) {
  const auto fn = make_function("QUAD", static_cast<int>(state.range(0)));
  const Vec x = Vec::Ones(fn->dim);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs_grad_twopoint_mc(*fn, x, 0.1, 1000, seed++).mean);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_TwoPointGradient)->Arg(2)->Arg(16)->Arg(128);

void BM_OnePointGradientReluNet(benchmark::State& state) {
  const auto fn = make_function("RELU-NET");
  const Vec x = Vec::Constant(2, 0.3);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs_grad_onepoint_mc(*fn, x, 0.2, 1000, seed++).mean);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_OnePointGradientReluNet);

void BM_DescentLemmaCheck(benchmark::State& state) {
  const auto fn = make_function("PW1D");
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_descent_lemma(*fn, 0.05, 1.0, 100, 7).violations);
  }
}
BENCHMARK(BM_DescentLemmaCheck);

}  // namespace
