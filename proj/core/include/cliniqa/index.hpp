#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/conceptmap.hpp"
#include "cliniqa/corpus.hpp"

namespace cliniqa {

enum class Weighting { tf, tfidf, normalized };
enum class FeatureSet { phrases, tags, combined };
enum class TermKind { phrase, tag };

std::string_view to_string(Weighting w);
std::string_view to_string(FeatureSet f);
/// Accepts "phrases", "tags", "combined" (also "phrases+tags"). Throws std::invalid_argument.
FeatureSet parse_feature_set(std::string_view name);

/// Sorted-index sparse vector.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }
  double squared_norm() const;
};

/// log(N / DF) in the given base. Throws std::domain_error unless 1 <= DF <= N.
double idf(std::size_t document_count, std::size_t document_frequency, double log_base = std::numbers::e);

struct NormalizedVector {
  std::vector<double> values;
  bool zero_norm = false;
};

double euclidean_length(std::span<const double> weights);
/// Divides by the Euclidean length; a zero vector comes back unchanged with zero_norm set.
NormalizedVector normalize(std::span<const double> weights);

/// Sparse documents x terms matrix under one weighting scheme.
class WeightedMatrix {
 public:
  WeightedMatrix() = default;
  WeightedMatrix(Weighting scheme, std::vector<std::string> columns, std::vector<SparseVector> rows);

  Weighting scheme() const { return scheme_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t column_count() const { return columns_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const SparseVector& row(std::size_t r) const { return rows_.at(r); }
  std::vector<double> dense_row(std::size_t r) const;
  double at(std::size_t r, std::size_t c) const;

 private:
  Weighting scheme_ = Weighting::tf;
  std::vector<std::string> columns_;
  std::vector<SparseVector> rows_;
};

struct IndexOptions {
  double log_base = std::numbers::e;
};

/// Raw term counts of one document, keyed by canonical phrase / tag name.
struct TermCounts {
  std::map<std::string, std::size_t> phrases;
  std::map<std::string, std::size_t> tags;
};

TermCounts term_frequency(const ConceptMapping& mapping);

/// The three term matrices (phrases, tags, phrases+tags) of a collection
/// under TF, TF x IDF and length-normalized weighting. Immutable once built.
class DocumentIndex {
 public:
  DocumentIndex() = default;

  /// Throws std::invalid_argument for an empty collection or duplicate ids.
  static DocumentIndex build(std::vector<std::string> doc_ids, std::span<const TermCounts> counts,
                             IndexOptions options = {});

  std::size_t document_count() const { return doc_ids_.size(); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::optional<std::size_t> row_of(std::string_view doc_id) const;

  /// Columns are sorted lexicographically; the combined vocabulary is the
  /// phrase columns followed by the tag columns.
  const std::vector<std::string>& vocabulary(FeatureSet set) const;
  const std::vector<std::size_t>& document_frequency(FeatureSet set) const;
  std::optional<std::size_t> column_of(TermKind kind, std::string_view term) const;

  const WeightedMatrix& matrix(FeatureSet set, Weighting scheme) const;
  double log_base() const { return log_base_; }

  /// Raw counts of one row, recovered from the TF matrices.
  TermCounts counts(std::size_t row) const;

  /// Re-indexes the selected rows as a collection of their own (N, DF and
  /// vocabularies recomputed).
  DocumentIndex subset(std::span<const std::size_t> rows) const;

  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static DocumentIndex load(std::istream& in);
  static DocumentIndex load(const std::filesystem::path& path);

 private:
  void rebuild_derived();
  std::size_t slot(FeatureSet set, Weighting scheme) const;

  double log_base_ = std::numbers::e;
  std::vector<std::string> doc_ids_;
  std::map<std::string, std::size_t, std::less<>> row_by_id_;
  std::vector<std::string> vocab_[3];
  std::vector<std::size_t> df_[3];
  std::map<std::string, std::size_t, std::less<>> column_by_term_[2];
  WeightedMatrix matrices_[9];
};

/// Maps every document with the lexicon and builds the index.
DocumentIndex build_index(std::span<const AbstractDoc> corpus, const Lexicon& lexicon, IndexOptions options = {});

}  // namespace cliniqa
