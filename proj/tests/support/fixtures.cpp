#include "fixtures.hpp"

#include <cliniqa/engine.hpp>

#include <fstream>
#include <sstream>

namespace cliniqa::testing {

std::filesystem::path data_dir() { return CLINIQA_TEST_DATA_DIR; }

std::filesystem::path minicorpus_dir() { return data_dir() / "minicorpus"; }

std::filesystem::path scratch_dir(std::string_view name) {
  auto dir = std::filesystem::path(CLINIQA_TEST_WORK_DIR) / std::string(name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

PipelineConfig minicorpus_config(const std::filesystem::path& work) {
  auto config = load_config(minicorpus_dir() / "cliniqa.json");
  config.index = work / "index.txt";
  config.models = work / "models";
  return config;
}

PipelineConfig trained_minicorpus(std::string_view name) {
  auto config = minicorpus_config(scratch_dir(name));
  build_index_file(config);
  train_models(config);
  return config;
}

std::filesystem::path write_config(const PipelineConfig& config, const std::filesystem::path& work) {
  auto path = work / "cliniqa.json";
  std::ofstream out(path);
  out << config_to_json(config);
  return path;
}

const std::vector<AbstractDoc>& minicorpus() {
  static const auto docs = parse_corpus(minicorpus_dir() / "corpus.jsonl");
  return docs;
}

const Lexicon& minicorpus_lexicon() {
  static const auto lexicon = Lexicon::load(minicorpus_dir() / "lexicon.tsv");
  return lexicon;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Lexicon make_lexicon(std::string_view lines) {
  std::istringstream in{std::string(lines)};
  return Lexicon::parse(in);
}

}  // namespace cliniqa::testing
