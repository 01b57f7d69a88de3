#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/conceptmap.hpp"
#include "cliniqa/corpus.hpp"
#include "cliniqa/dataset.hpp"
#include "cliniqa/index.hpp"
#include "cliniqa/stage.hpp"

namespace cliniqa {

/// Class names in DocClass order, used as the label set of document models.
std::vector<std::string> doc_class_names();

/// A fixed feature space: phrase columns, tag columns, and which of them are in use.
class FeatureSpace {
 public:
  FeatureSpace() = default;
  FeatureSpace(std::vector<std::string> phrases, std::vector<std::string> tags, FeatureSet set);

  /// Vocabulary of the given index under the chosen feature set.
  static FeatureSpace of_index(const DocumentIndex& index, FeatureSet set);

  FeatureSet feature_set() const { return set_; }
  std::size_t dimension() const;
  const std::vector<std::string>& phrases() const { return phrases_; }
  const std::vector<std::string>& tags() const { return tags_; }

  /// Raw counts projected onto the space (phrase columns first for combined).
  FeatureVector project(const TermCounts& counts) const;

 private:
  std::vector<std::string> phrases_;
  std::vector<std::string> tags_;
  FeatureSet set_ = FeatureSet::combined;
};

struct DocFeatureVector {
  std::string doc_id;
  FeatureVector features;  // raw occurrence counts
};

DocFeatureVector doc_features(const DocumentIndex& index, std::size_t row, FeatureSet set);
/// Throws std::invalid_argument for an unknown feature set name or doc id.
DocFeatureVector doc_features(const DocumentIndex& index, std::string_view doc_id, std::string_view feature_set);

/// One sample per labeled document of the corpus (unlabeled documents are skipped).
LabeledDataset document_dataset(std::span<const AbstractDoc> corpus, const DocumentIndex& index,
                                const FeatureSpace& space);

/// Three-way evidence classifier bound to the vocabulary it was trained on.
class DocumentClassifier {
 public:
  DocumentClassifier() = default;

  /// Trains on the labeled documents of `corpus`. Throws DataError when fewer
  /// than two documents carry labels.
  static DocumentClassifier train(std::span<const AbstractDoc> corpus, const DocumentIndex& index,
                                  const StageSpec& spec);

  bool trained() const { return model_ != nullptr; }
  const FeatureSpace& space() const { return space_; }
  const Classifier& model() const;

  DocClass classify(const TermCounts& counts) const;
  DocClass classify(const AbstractDoc& doc, const Lexicon& lexicon) const;

  void save(const std::filesystem::path& path) const;
  static DocumentClassifier load(const std::filesystem::path& path);
  std::string serialize() const;
  static DocumentClassifier deserialize(std::string_view json_text);

 private:
  FeatureSpace space_;
  std::shared_ptr<const Classifier> model_;
};

struct EvidenceSelection {
  std::vector<std::size_t> rows;      // corpus positions kept for retrieval
  std::vector<DocClass> assigned;     // final class per corpus document
  std::vector<DocClass> predicted;    // model prediction per document (gold when no model)
  bool fallback = false;              // no evidence document: every row kept
  std::vector<std::string> warnings;
};

/// Keeps intervention and non-intervention documents. Gold labels override
/// predictions when `gold_override` is set. Without a classifier every
/// document must carry a gold label (DataError otherwise).
EvidenceSelection filter_evidence(std::span<const AbstractDoc> corpus, const DocumentIndex& index,
                                  const DocumentClassifier* classifier, bool gold_override = true);

}  // namespace cliniqa
