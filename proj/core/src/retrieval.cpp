#include "cliniqa/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cliniqa {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

}  // namespace

QueryVectors formulate_query(const ConceptMapping& question, const DocumentIndex& index) {
  QueryVectors q;
  q.phrases.assign(index.vocabulary(FeatureSet::phrases).size(), 0.0);
  q.tags.assign(index.vocabulary(FeatureSet::tags).size(), 0.0);
  for (const auto& [phrase, n] : question.phrases) {
    if (const auto col = index.column_of(TermKind::phrase, phrase)) {
      q.phrases[*col] = 1.0;
      q.matched_phrases.push_back(phrase);
    }
  }
  for (const auto& [tag, n] : question.tags) {
    if (const auto col = index.column_of(TermKind::tag, tag)) {
      q.tags[*col] = 1.0;
      q.matched_tags.push_back(tag);
    }
  }
  return q;
}

CosineResult cosine(std::span<const double> q, std::span<const double> d) {
  require_same_length(q.size(), d.size(), "cosine");
  double num = 0.0;
  double qq = 0.0;
  double dd = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    num += q[i] * d[i];
    qq += q[i] * q[i];
    dd += d[i] * d[i];
  }
  if (qq == 0.0 || dd == 0.0) return {0.0, true};
  return {num / (std::sqrt(qq) * std::sqrt(dd)), false};
}

double sim(std::span<const double> q, std::span<const double> d) {
  require_same_length(q.size(), d.size(), "sim");
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) sum += q[i] * d[i];
  return sum;
}

double sim(std::span<const double> q, const SparseVector& d) {
  double sum = 0.0;
  for (std::size_t i = 0; i < d.nnz(); ++i) {
    if (d.indices[i] >= q.size()) throw std::invalid_argument("sim: document column outside the query vector");
    sum += q[d.indices[i]] * d.values[i];
  }
  return sum;
}

std::vector<double> score_documents(std::span<const double> query, const DocumentIndex& index, FeatureSet set) {
  const auto& m = index.matrix(set, Weighting::normalized);
  require_same_length(query.size(), m.column_count(), "score_documents");
  std::vector<double> out(m.row_count());
  for (std::size_t r = 0; r < m.row_count(); ++r) out[r] = sim(query, m.row(r));
  return out;
}

CandidateSet extract_candidates(std::span<const std::string> doc_ids, std::span<const double> phrase_scores,
                                std::span<const double> tag_scores, const ExtractOptions& options) {
  if (doc_ids.empty()) throw std::invalid_argument("extract_candidates: empty corpus");
  require_same_length(doc_ids.size(), phrase_scores.size(), "extract_candidates");
  require_same_length(doc_ids.size(), tag_scores.size(), "extract_candidates");
  if (options.top_k == 0) throw std::invalid_argument("extract_candidates: top_k must be at least 1");

  auto collect = [&](bool require_both) {
    std::vector<Candidate> out;
    for (std::size_t r = 0; r < doc_ids.size(); ++r) {
      const bool p = phrase_scores[r] > 0.0;
      const bool t = tag_scores[r] > 0.0;
      if (require_both ? (p && t) : (p || t)) {
        out.push_back(Candidate{doc_ids[r], r,
                                options.phrase_bias * phrase_scores[r] + options.tag_bias * tag_scores[r],
                                phrase_scores[r], tag_scores[r]});
      }
    }
    return out;
  };

  CandidateSet set;
  set.candidates = collect(true);
  if (set.candidates.empty()) {
    set.fallback = true;
    set.candidates = collect(false);
  }
  std::sort(set.candidates.begin(), set.candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.combined != b.combined) return a.combined > b.combined;
    return a.doc_id < b.doc_id;
  });
  if (set.candidates.size() > options.top_k) set.candidates.resize(options.top_k);
  return set;
}

CandidateSet retrieve(const ConceptMapping& question, const DocumentIndex& index, const ExtractOptions& options) {
  const auto q = formulate_query(question, index);
  const auto phrase_scores = score_documents(q.phrases, index, FeatureSet::phrases);
  const auto tag_scores = score_documents(q.tags, index, FeatureSet::tags);
  return extract_candidates(index.doc_ids(), phrase_scores, tag_scores, options);
}

}  // namespace cliniqa
