#include <cliniqa/cross_validation.hpp>
#include <cliniqa/svm.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace cliniqa;

namespace {

// Two overlapping classes of non-negative features (naive Bayes needs counts).
LabeledDataset gaussian_classes(std::size_t samples, std::size_t dim) {
  std::mt19937 rng(1);
  std::normal_distribution<double> noise(0.0, 1.0);
  LabeledDataset d({"neg", "pos"}, dim);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t label = i % 2;
    FeatureVector x(dim);
    for (auto& v : x) v = std::abs(noise(rng)) + (label ? 0.8 : 0.0);
    d.add(std::move(x), label);
  }
  return d;
}

void BM_svm_train(benchmark::State& state) {
  const auto data = gaussian_classes(static_cast<std::size_t>(state.range(0)), 40);
  std::vector<FeatureVector> x;
  std::vector<int> y;
  for (const auto& s : data.samples()) {
    x.push_back(s.x);
    y.push_back(s.label ? 1 : -1);
  }
  for (auto _ : state) benchmark::DoNotOptimize(svm_train(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_svm_train)->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond)->Complexity();

void BM_cross_validate(benchmark::State& state) {
  const auto algorithm = kAllAlgorithms[state.range(0)];
  const auto data = gaussian_classes(200, 30);
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate(algorithm, ClassifierParams{}, data, 10, 42));
  state.SetLabel(std::string(to_string(algorithm)));
}
BENCHMARK(BM_cross_validate)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace
