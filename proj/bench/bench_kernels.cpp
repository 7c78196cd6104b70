// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "fdepth/classify.hpp"
#include "fdepth/geometry.hpp"
#include "fdepth/simulate.hpp"

using namespace fdepth;

namespace {

LabeledSample make_sample(std::size_t n) {
  CgpSpec spec;
  spec.model = CgpModel::CGP2;
  spec.n0 = spec.n1 = n / 2;
  spec.seed = 7;
  return generate_cgp(spec);
}

void BM_PairwiseSerial(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances_serial(s.sample()));
}

void BM_PairwiseParallel(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances(s.sample()));
}

void BM_KfsdVectorSerial(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  const auto spec = DepthSpec::kfsd(50);
  for (auto _ : state) benchmark::DoNotOptimize(depth_vector_serial(s, 0, s.sample(), spec));
}

void BM_KfsdVectorParallel(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  const auto spec = DepthSpec::kfsd(50);
  for (auto _ : state) benchmark::DoNotOptimize(depth_vector(s, 0, s.sample(), spec));
}

void BM_PredictSerial(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  const Classifier c(s, ClassifierSpec::wmd(DepthSpec::kfsd(50)));
  for (auto _ : state) benchmark::DoNotOptimize(c.predict_all_serial(s.sample()));
}

void BM_PredictParallel(benchmark::State& state) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  const Classifier c(s, ClassifierSpec::wmd(DepthSpec::kfsd(50)));
  for (auto _ : state) benchmark::DoNotOptimize(c.predict_all(s.sample()));
}

}  // namespace

BENCHMARK(BM_PairwiseSerial)->Arg(50)->Arg(200);
BENCHMARK(BM_PairwiseParallel)->Arg(50)->Arg(200);
BENCHMARK(BM_KfsdVectorSerial)->Arg(50)->Arg(200);
BENCHMARK(BM_KfsdVectorParallel)->Arg(50)->Arg(200);
BENCHMARK(BM_PredictSerial)->Arg(50)->Arg(200);
BENCHMARK(BM_PredictParallel)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
