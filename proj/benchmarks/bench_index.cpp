#include <cliniqa/conceptmap.hpp>
#include <cliniqa/corpus.hpp>
#include <cliniqa/index.hpp>
#include <cliniqa/text.hpp>

#include <benchmark/benchmark.h>

#include <filesystem>

using namespace cliniqa;

namespace {

const std::filesystem::path kCorpusDir = std::filesystem::path(CLINIQA_BENCH_DATA_DIR) / "minicorpus";

void BM_tokenize_and_stem(benchmark::State& state) {
  const auto corpus = parse_corpus(kCorpusDir / "corpus.jsonl");
  for (auto _ : state) {
    for (const auto& doc : corpus) {
      auto tokens = tokenize_and_stem(doc.body);
      benchmark::DoNotOptimize(tokens);
    }
  }
  state.counters["docs/s"] = benchmark::Counter(double(corpus.size()), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_tokenize_and_stem);

void BM_map_corpus(benchmark::State& state) {
  const auto corpus = parse_corpus(kCorpusDir / "corpus.jsonl");
  const auto lexicon = Lexicon::load(kCorpusDir / "lexicon.tsv");
  for (auto _ : state) {
    for (const auto& doc : corpus) benchmark::DoNotOptimize(map_document(doc, lexicon));
  }
  state.counters["docs/s"] = benchmark::Counter(double(corpus.size()), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_map_corpus);

void BM_build_index(benchmark::State& state) {
  const auto corpus = parse_corpus(kCorpusDir / "corpus.jsonl");
  const auto lexicon = Lexicon::load(kCorpusDir / "lexicon.tsv");
  for (auto _ : state) benchmark::DoNotOptimize(build_index(corpus, lexicon));
}
BENCHMARK(BM_build_index);

// Synthetic collections of growing size over a fixed 400-phrase vocabulary.
void BM_index_from_counts(benchmark::State& state) {
  const auto docs = static_cast<std::size_t>(state.range(0));
  std::vector<TermCounts> counts(docs);
  std::vector<std::string> ids;
  for (std::size_t d = 0; d < docs; ++d) {
    ids.push_back(std::to_string(d));
    for (std::size_t t = 0; t < 30; ++t) counts[d].phrases["p" + std::to_string((d * 7 + t * 13) % 400)] = 1 + t % 3;
    counts[d].tags["T" + std::to_string(d % 20)] = 2;
  }
  for (auto _ : state) benchmark::DoNotOptimize(DocumentIndex::build(ids, counts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_index_from_counts)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

}  // namespace
