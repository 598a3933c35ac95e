#include <benchmark/benchmark.h>

#include "spbzo/catalog.hpp"
#include "spbzo/optimizers.hpp"
#include "spbzo/stationarity.hpp"

using namespace spbzo;

namespace {

void BM_Algorithm1Ball(benchmark::State& state) {
  const auto fn = make_function("QUAD", static_cast<int>(state.range(0)));
  const auto set = FeasibleSet::ball(Vec::Zero(fn->dim), 10.0);
  const Vec x0 = Vec::Constant(fn->dim, 1.0);
  const int horizon = 1000;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_algorithm1(*fn, set, x0, 0.01, Schedule::constant_over_sqrt(1.0), horizon, seed++).xs.back());
  }
  state.SetItemsProcessed(state.iterations() * (horizon + 1));
}
BENCHMARK(BM_Algorithm1Ball)->Arg(2)->Arg(32);

void BM_Algorithm2Abs(benchmark::State& state) {
  const auto fn = make_function("ABS1D");
  const int horizon = 10000;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_algorithm2(*fn, Vec::Constant(1, 0.8), 0.01, Schedule::constant_over_sqrt(0.01), horizon, seed++)
            .xs.back());
  }
  state.SetItemsProcessed(state.iterations() * (horizon + 1));
}
BENCHMARK(BM_Algorithm2Abs);

void BM_GoldsteinDistance(benchmark::State& state) {
  const bool exact = state.range(0) == 1;
  const auto fn = make_function(exact ? "PW1D" : "QUAD");
  const Vec x = Vec::Constant(fn->dim, 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(goldstein_distance(*fn, x, 0.2, 200, 5).value);
  }
}
BENCHMARK(BM_GoldsteinDistance)->Arg(1)->Arg(2);

}  // namespace
