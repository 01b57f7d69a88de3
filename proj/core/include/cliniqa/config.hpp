#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "cliniqa/ranking.hpp"
#include "cliniqa/stage.hpp"

namespace cliniqa {

/// Everything needed to build, train and serve the pipeline. Loaded from a
/// JSON file; relative paths resolve against the file's directory.
struct PipelineConfig {
  std::filesystem::path corpus;
  std::filesystem::path lexicon;
  std::filesystem::path questions;
  std::filesystem::path gold;          // optional, used by eval
  std::filesystem::path index;         // persisted index file
  std::filesystem::path models;        // directory of persisted models

  StageSpec doc_stage{};
  StageSpec gate_stage{};
  StageSpec focus_stage{};
  bool classify_documents = true;      // false: gold labels alone select the evidence subset
  bool gold_override = true;

  std::size_t top_k = 10;
  double phrase_bias = 1.0;
  double tag_bias = 1.0;
  TermMode term_mode = TermMode::phrases;
  double log_base = 2.718281828459045;
  std::uint64_t seed = 42;
  std::size_t cv_folds = 10;

  std::string host = "127.0.0.1";
  std::uint16_t port = 8080;

  std::filesystem::path doc_model_path() const { return models / "doc_classifier.json"; }
  std::filesystem::path gate_model_path() const { return models / "gate.json"; }
  std::filesystem::path focus_model_path() const { return models / "focus.json"; }
};

/// Throws ParseError on malformed JSON, unknown keys or invalid values
/// (top_k < 1, unknown algorithm, ...).
PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const PipelineConfig& config);

/// Throws DataError naming the first input file that does not exist.
void require_inputs(const PipelineConfig& config);

/// The port from CLINIQA_PORT when set, otherwise the configured one.
std::uint16_t effective_port(const PipelineConfig& config);

}  // namespace cliniqa
