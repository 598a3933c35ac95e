#include <benchmark/benchmark.h>

#include "spbzo/catalog.hpp"
#include "spbzo/lambert_w.hpp"
#include "spbzo/min_norm_point.hpp"
#include "spbzo/quadrature.hpp"
#include "spbzo/rng.hpp"
#include "spbzo/special.hpp"

using namespace spbzo;

namespace {

void BM_LambertWm1(benchmark::State& state) {
  double t = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(w_minus1(t).value);
    t = t < -1e-12 ? t * 0.999 : -0.3;
  }
}
BENCHMARK(BM_LambertWm1);

void BM_ChiSquareCdf(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi_square_cdf(x, d));
    x = x > 60.0 ? 0.5 : x + 0.37;
  }
}
BENCHMARK(BM_ChiSquareCdf)->Arg(1)->Arg(10)->Arg(100);

void BM_QuadratureValue(benchmark::State& state) {
  const auto fn = make_function(state.range(0) == 1 ? "PW1D" : "RELU-NET");
  const Vec x = Vec::Constant(fn->dim, 0.4);
  const int nodes = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs_value_quadrature(*fn, x, 0.3, nodes).value);
  }
}
BENCHMARK(BM_QuadratureValue)->Args({1, 200})->Args({2, 50})->Args({2, 200});

void BM_MinNormPoint(benchmark::State& state) {
  NormalStream rng(3);
  std::vector<Vec> pts;
  for (int i = 0; i < state.range(0); ++i) pts.push_back(rng.normal_vec(4) + Vec::Constant(4, 0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_norm_point(pts).point);
  }
}
BENCHMARK(BM_MinNormPoint)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
