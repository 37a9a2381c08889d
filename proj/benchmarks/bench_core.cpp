#include <benchmark/benchmark.h>

#include <random>

#include "equisym/adaptive.hpp"
#include "equisym/analytic.hpp"
#include "equisym/conv.hpp"
#include "equisym/regularizer.hpp"
#include "equisym/warp.hpp"

using namespace equisym;

namespace {

Image test_image(int m) {
  const GridSpec grid(1.0 / m, m);
  return sample_function(FunctionSpec::gaussian(0.18, 0.1, 0.4, 0.45), grid);
}

void BM_Warp(benchmark::State& state) {
  const Image img = test_image(static_cast<int>(state.range(0)));
  const Transform A = rotation(M_PI / 7.0);
  for (auto _ : state) {
    Image out = act(img, A);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Warp)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_WarpBicubic(benchmark::State& state) {
  const Image img = test_image(static_cast<int>(state.range(0)));
  const Transform A = rotation(M_PI / 7.0);
  for (auto _ : state) {
    Image out = act(img, A, Interp::bicubic);
    benchmark::DoNotOptimize(out.values().data());
  }
}
BENCHMARK(BM_WarpBicubic)->Arg(128);

void BM_EvalFilter(benchmark::State& state) {
  const FilterBasis basis = make_basis(static_cast<int>(state.range(0)), 1.0);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  FilterCoeffs c;
  c.values.resize(static_cast<std::size_t>(basis.count()));
  for (auto& v : c.values) v = uni(rng);
  const Transform A = rotation(0.3);
  for (auto _ : state) {
    auto filter = eval_filter(c, basis, A);
    benchmark::DoNotOptimize(filter.data());
  }
}
BENCHMARK(BM_EvalFilter)->Arg(9)->Arg(17)->Arg(33);

void BM_LiftConv(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Image img = test_image(m);
  const FilterBasis basis = make_basis(9, img.grid().mesh());
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  FilterCoeffs c;
  c.values.resize(static_cast<std::size_t>(basis.count()));
  for (auto& v : c.values) v = uni(rng);
  const LayerSpec layer(basis, GroupFamily(8), {c});
  for (auto _ : state) {
    FeatureMap f = lift_conv(img, layer);
    benchmark::DoNotOptimize(f.values().data());
  }
}
BENCHMARK(BM_LiftConv)->Arg(64)->Arg(128);

void BM_FeatureResponse(benchmark::State& state) {
  const Image img = test_image(static_cast<int>(state.range(0)));
  static const RegularizerSpec reg = RegularizerSpec::make(RegName::tv);
  const ResponseEngine engine(img, reg);
  const Transform A = rotation(0.37);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.response(A));
  }
}
BENCHMARK(BM_FeatureResponse)->Arg(128)->Arg(256);

void BM_VarianceObjective(benchmark::State& state) {
  const Image img = test_image(128);
  static const RegularizerSpec reg = RegularizerSpec::make(RegName::tv);
  const AffineParams w(0.2, 1.2, 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(variance_objective(img, w, reg, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_VarianceObjective)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
