#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/corpus.hpp"

namespace cliniqa {

struct GoldAnswer {
  std::string question_id;
  std::string question_text;
  std::string doc_id;
  std::size_t sentence = 0;
};

/// Tab-separated `question_id \t question_text \t doc_id \t sentence_index`; `#` comments.
std::vector<GoldAnswer> parse_gold(std::istream& in, std::string_view source_name = "<stream>");
std::vector<GoldAnswer> parse_gold(const std::filesystem::path& path);

/// Throws DataError when a gold answer names an unknown document or sentence.
void validate_gold(std::span<const GoldAnswer> gold, std::span<const AbstractDoc> corpus);

/// Word counts of one ranked abstract as seen by a reader.
struct EffortDoc {
  std::string doc_id;
  std::size_t word_count = 0;                // |A_i|, title included
  std::vector<std::size_t> words_through;    // words read after finishing sentence j
};

EffortDoc effort_doc(const AbstractDoc& doc);

/// Words read before reaching the end of the gold sentence: full abstracts
/// ranked above the gold one, then the gold abstract up to and including the
/// gold sentence. nullopt when the gold document is not ranked. Throws
/// DataError when the gold sentence is out of range.
std::optional<std::size_t> user_effort(std::span<const EffortDoc> ranked, const GoldAnswer& gold);

/// 1-based rank of the gold document, nullopt when absent.
std::optional<std::size_t> gold_rank(std::span<const std::string> ranked_doc_ids, std::string_view gold_doc_id);

/// Mean of 1/rank with 0 for unanswered. Throws std::invalid_argument on an empty list.
double mrr(std::span<const std::optional<std::size_t>> ranks);

struct CurvePoint {
  std::size_t cutoff = 0;
  double recall = 0.0;
};

/// Fraction of questions with effort <= cutoff, per cutoff (unanswered never count).
std::vector<CurvePoint> recall_effort_curve(std::span<const std::optional<std::size_t>> efforts,
                                            std::span<const std::size_t> cutoffs);

/// 0, step, 2*step, ... up to and including max_cutoff.
std::vector<std::size_t> effort_cutoffs(std::size_t max_cutoff, std::size_t step);

struct QuestionOutcome {
  std::string question_id;
  std::string question_text;
  std::string gold_doc_id;
  std::size_t gold_sentence = 0;
  bool answerable = false;                 // gate decision
  std::optional<std::size_t> rank;         // of the gold document
  double reciprocal_rank = 0.0;
  std::optional<std::size_t> effort;
  bool sentence_highlighted = false;       // gold sentence highlighted in the gold abstract
};

struct EvalReport {
  std::vector<QuestionOutcome> questions;
  double mrr = 0.0;
  double answered_fraction = 0.0;
  double top1_fraction = 0.0;
  std::vector<CurvePoint> curve;
};

/// Aggregates per-question outcomes; reciprocal ranks are recomputed from the ranks.
EvalReport summarize(std::vector<QuestionOutcome> questions, std::span<const std::size_t> cutoffs);

void write_report(std::ostream& out, const EvalReport& report);
/// (cutoff, recall) pairs as tab-separated lines for plotting.
void write_curve_tsv(std::ostream& out, std::span<const CurvePoint> curve);

}  // namespace cliniqa
