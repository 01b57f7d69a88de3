#include <cliniqa/config.hpp>
#include <cliniqa/engine.hpp>

#include <benchmark/benchmark.h>

#include <filesystem>

using namespace cliniqa;

namespace {

const std::filesystem::path kCorpusDir = std::filesystem::path(CLINIQA_BENCH_DATA_DIR) / "minicorpus";

PipelineConfig bench_config() {
  auto config = load_config(kCorpusDir / "cliniqa.json");
  const auto work = std::filesystem::temp_directory_path() / "cliniqa_bench";
  std::filesystem::create_directories(work);
  config.index = work / "index.txt";
  config.models = work / "models";
  return config;
}

std::shared_ptr<const Engine> trained_engine() {
  static const auto engine = [] {
    const auto config = bench_config();
    build_index_file(config);
    train_models(config);
    return Engine::open(config);
  }();
  return engine;
}

void BM_build_and_train(benchmark::State& state) {
  const auto config = bench_config();
  for (auto _ : state) {
    build_index_file(config);
    benchmark::DoNotOptimize(train_models(config));
  }
}
BENCHMARK(BM_build_and_train)->Unit(benchmark::kMillisecond);

void BM_ask_answerable(benchmark::State& state) {
  const auto engine = trained_engine();
  for (auto _ : state) benchmark::DoNotOptimize(engine->ask("What is the drug of choice for acute pancreatitis?"));
}
BENCHMARK(BM_ask_answerable);

void BM_ask_refused(benchmark::State& state) {
  const auto engine = trained_engine();
  for (auto _ : state)
    benchmark::DoNotOptimize(engine->ask("Is my patient with pancreatic fistula ready to go home tomorrow?"));
}
BENCHMARK(BM_ask_refused);

void BM_evaluate_gold(benchmark::State& state) {
  const auto engine = trained_engine();
  const auto gold = parse_gold(kCorpusDir / "gold.tsv");
  const auto cutoffs = effort_cutoffs(500, 50);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(*engine, gold, cutoffs));
}
BENCHMARK(BM_evaluate_gold)->Unit(benchmark::kMillisecond);

}  // namespace
