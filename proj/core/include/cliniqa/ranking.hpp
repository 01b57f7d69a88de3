#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/conceptmap.hpp"
#include "cliniqa/corpus.hpp"

namespace cliniqa {

/// What counts as a question term in line scores: canonical medical phrases
/// (default) or plain stemmed words.
enum class TermMode { phrases, words };

std::string_view to_string(TermMode mode);
TermMode parse_term_mode(std::string_view name);

/// Distinct question terms, sorted.
struct QuestionTerms {
  std::vector<std::string> terms;
};

QuestionTerms question_terms(const ConceptMapping& mapping, std::string_view question_text, TermMode mode);

/// Terms and semantic tags found in one sentence.
struct SentenceConcepts {
  std::set<std::string> terms;
  std::set<std::string> tags;
};

std::vector<SentenceConcepts> sentence_concepts(const AbstractDoc& doc, const Lexicon& lexicon, TermMode mode);

/// 1 iff the sentence carries at least one of the focus tags.
int sentence_flag(const SentenceConcepts& sentence, std::span<const std::string> focus_tags);

/// flag x matched / total, kept as integers so comparisons are exact.
struct LineScore {
  int flag = 0;
  std::size_t matched = 0;  // distinct question terms present in the sentence
  std::size_t total = 0;    // distinct question terms
  bool undefined = false;   // question without terms; the score is 0

  std::size_t numerator() const { return flag ? matched : 0; }
  double value(double scale = 1.0) const;
};

LineScore line_score(const SentenceConcepts& sentence, const QuestionTerms& question,
                     std::span<const std::string> focus_tags);

/// A retrieved abstract prepared for sentence scoring.
struct CandidateAbstract {
  std::string doc_id;
  std::string title;
  std::vector<std::string> sentence_texts;
  std::vector<SentenceConcepts> sentences;
  double retrieval_score = 0.0;
};

CandidateAbstract make_candidate(const AbstractDoc& doc, const Lexicon& lexicon, TermMode mode,
                                 double retrieval_score = 0.0);

struct SentenceScore {
  std::size_t index = 0;
  std::string text;
  int flag = 0;
  std::size_t matched = 0;
  double line_score = 0.0;
  bool highlighted = false;  // reaches the abstract's maximum line score (> 0)
};

struct RankedAbstract {
  std::size_t rank = 0;  // 1-based
  std::string doc_id;
  std::string title;
  double abstract_score = 0.0;  // sum of line scores
  double max_line_score = 0.0;
  std::optional<std::size_t> best_sentence;
  double retrieval_score = 0.0;
  std::vector<SentenceScore> sentences;
};

struct RankedAnswer {
  std::vector<RankedAbstract> abstracts;
  bool undefined = false;  // question had no terms; every score is 0
};

struct RankOptions {
  /// 1 reports fractions, 100 percentages; the order never depends on it.
  double scale = 1.0;
};

/// Orders by abstract score descending, then maximum line score descending,
/// then doc id ascending.
RankedAnswer rank_candidates(std::span<const CandidateAbstract> candidates, const QuestionTerms& question,
                             std::span<const std::string> focus_tags, const RankOptions& options = {});

}  // namespace cliniqa
