#pragma once

#include <cliniqa/config.hpp>
#include <cliniqa/conceptmap.hpp>
#include <cliniqa/corpus.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cliniqa::testing {

std::filesystem::path data_dir();
std::filesystem::path minicorpus_dir();

/// Fresh, empty directory under the build tree for one test.
std::filesystem::path scratch_dir(std::string_view name);

/// The bundled mini-corpus configuration with index and models redirected to `work`.
PipelineConfig minicorpus_config(const std::filesystem::path& work);

/// minicorpus_config in a fresh scratch directory with the index built and
/// the models trained.
PipelineConfig trained_minicorpus(std::string_view name);

/// Writes `config` as a JSON file inside `work` and returns its path.
std::filesystem::path write_config(const PipelineConfig& config, const std::filesystem::path& work);

const std::vector<AbstractDoc>& minicorpus();
const Lexicon& minicorpus_lexicon();

std::string read_file(const std::filesystem::path& path);

/// Lexicon built from inline `surface \t phrase \t tag` lines.
Lexicon make_lexicon(std::string_view lines);

}  // namespace cliniqa::testing
