#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cliniqa/conceptmap.hpp"
#include "cliniqa/index.hpp"

namespace cliniqa {

/// Binary query vectors over the phrase and tag vocabularies of an index.
struct QueryVectors {
  std::vector<double> phrases;
  std::vector<double> tags;
  std::vector<std::string> matched_phrases;  // question phrases found in the vocabulary
  std::vector<std::string> matched_tags;

  bool empty() const { return matched_phrases.empty() && matched_tags.empty(); }
};

/// Sets a bit for every question phrase / tag present in the index
/// vocabulary; repeated terms still give 1, unknown terms are dropped.
QueryVectors formulate_query(const ConceptMapping& question, const DocumentIndex& index);

struct CosineResult {
  double value = 0.0;
  bool zero_vector = false;  // either side had zero length; value is 0
};

/// sum q_i d_i / (|q| |d|). Throws std::invalid_argument on a length mismatch.
CosineResult cosine(std::span<const double> q, std::span<const double> d);

/// Inner product only; equals the cosine up to the constant |q| when d is
/// length-normalized. Throws std::invalid_argument on a length mismatch.
double sim(std::span<const double> q, std::span<const double> d);
double sim(std::span<const double> q, const SparseVector& d);

/// sim against every row of the normalized matrix of one vocabulary.
std::vector<double> score_documents(std::span<const double> query, const DocumentIndex& index, FeatureSet set);

struct Candidate {
  std::string doc_id;
  std::size_t row = 0;
  double combined = 0.0;
  double phrase_score = 0.0;
  double tag_score = 0.0;
};

struct CandidateSet {
  std::vector<Candidate> candidates;
  bool fallback = false;  // no document scored on both vectors; union used instead
};

struct ExtractOptions {
  std::size_t top_k = 10;
  double phrase_bias = 1.0;
  double tag_bias = 1.0;
};

/// Documents with a positive score on both vectors, scored by
/// phrase_bias * phrase + tag_bias * tag, sorted by score descending then
/// doc id ascending, truncated to top_k. An empty intersection falls back to
/// the union with the fallback flag set. Throws std::invalid_argument for an
/// empty corpus or mismatched lengths.
CandidateSet extract_candidates(std::span<const std::string> doc_ids, std::span<const double> phrase_scores,
                                std::span<const double> tag_scores, const ExtractOptions& options = {});

/// formulate_query, score_documents on both vocabularies and extract_candidates.
CandidateSet retrieve(const ConceptMapping& question, const DocumentIndex& index, const ExtractOptions& options = {});

}  // namespace cliniqa
