#include "cliniqa/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cliniqa/text.hpp"

namespace cliniqa {

std::string_view to_string(TermMode mode) { return mode == TermMode::words ? "words" : "phrases"; }

TermMode parse_term_mode(std::string_view name) {
  if (name == "phrases") return TermMode::phrases;
  if (name == "words") return TermMode::words;
  throw std::invalid_argument("unknown term mode '" + std::string(name) + "' (expected phrases or words)");
}

QuestionTerms question_terms(const ConceptMapping& mapping, std::string_view question_text, TermMode mode) {
  std::set<std::string> terms;
  if (mode == TermMode::phrases) {
    for (const auto& [phrase, n] : mapping.phrases) terms.insert(phrase);
  } else {
    for (auto& token : tokenize_and_stem(question_text)) terms.insert(std::move(token));
  }
  return QuestionTerms{{terms.begin(), terms.end()}};
}

std::vector<SentenceConcepts> sentence_concepts(const AbstractDoc& doc, const Lexicon& lexicon, TermMode mode) {
  std::vector<SentenceConcepts> out(doc.sentences.size());
  const auto mapping = map_document(doc, lexicon);
  for (const auto& span : mapping.spans) {
    auto& s = out.at(span.sentence);
    s.tags.insert(span.tag);
    if (mode == TermMode::phrases) s.terms.insert(span.phrase);
  }
  if (mode == TermMode::words) {
    for (std::size_t j = 0; j < doc.sentences.size(); ++j) {
      out[j].terms.insert(doc.sentences[j].tokens.begin(), doc.sentences[j].tokens.end());
    }
  }
  return out;
}

int sentence_flag(const SentenceConcepts& sentence, std::span<const std::string> focus_tags) {
  for (const auto& tag : focus_tags) {
    if (sentence.tags.count(tag)) return 1;
  }
  return 0;
}

double LineScore::value(double scale) const {
  if (total == 0) return 0.0;
  return static_cast<double>(numerator()) * scale / static_cast<double>(total);
}

LineScore line_score(const SentenceConcepts& sentence, const QuestionTerms& question,
                     std::span<const std::string> focus_tags) {
  LineScore out;
  out.total = question.terms.size();
  out.undefined = out.total == 0;
  out.flag = sentence_flag(sentence, focus_tags);
  for (const auto& term : question.terms) {
    if (sentence.terms.count(term)) ++out.matched;
  }
  return out;
}

CandidateAbstract make_candidate(const AbstractDoc& doc, const Lexicon& lexicon, TermMode mode,
                                 double retrieval_score) {
  CandidateAbstract c;
  c.doc_id = doc.doc_id;
  c.title = doc.title;
  for (const auto& s : doc.sentences) c.sentence_texts.push_back(s.text);
  c.sentences = sentence_concepts(doc, lexicon, mode);
  c.retrieval_score = retrieval_score;
  return c;
}

RankedAnswer rank_candidates(std::span<const CandidateAbstract> candidates, const QuestionTerms& question,
                             std::span<const std::string> focus_tags, const RankOptions& options) {
  struct Keyed {
    std::size_t sum = 0;
    std::size_t max = 0;
    RankedAbstract abstract;
  };
  const std::size_t total = question.terms.size();
  auto scaled = [&](std::size_t numerator) {
    return total == 0 ? 0.0 : static_cast<double>(numerator) * options.scale / static_cast<double>(total);
  };

  std::vector<Keyed> keyed;
  keyed.reserve(candidates.size());
  for (const auto& c : candidates) {
    if (c.sentences.size() != c.sentence_texts.size()) {
      throw std::invalid_argument("candidate '" + c.doc_id + "' has mismatched sentence data");
    }
    Keyed k;
    k.abstract.doc_id = c.doc_id;
    k.abstract.title = c.title;
    k.abstract.retrieval_score = c.retrieval_score;
    for (std::size_t j = 0; j < c.sentences.size(); ++j) {
      const auto ls = line_score(c.sentences[j], question, focus_tags);
      k.sum += ls.numerator();
      k.max = std::max(k.max, ls.numerator());
      k.abstract.sentences.push_back(SentenceScore{j, c.sentence_texts[j], ls.flag, ls.matched, ls.value(options.scale), false});
    }
    for (std::size_t j = 0; j < c.sentences.size(); ++j) {
      const auto& s = k.abstract.sentences[j];
      const std::size_t numerator = s.flag ? s.matched : 0;
      if (k.max > 0 && numerator == k.max) {
        k.abstract.sentences[j].highlighted = true;
        if (!k.abstract.best_sentence) k.abstract.best_sentence = j;
      }
    }
    k.abstract.abstract_score = scaled(k.sum);
    k.abstract.max_line_score = scaled(k.max);
    keyed.push_back(std::move(k));
  }

  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.sum != b.sum) return a.sum > b.sum;
    if (a.max != b.max) return a.max > b.max;
    return a.abstract.doc_id < b.abstract.doc_id;
  });

  RankedAnswer out;
  out.undefined = total == 0;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    keyed[i].abstract.rank = i + 1;
    out.abstracts.push_back(std::move(keyed[i].abstract));
  }
  return out;
}

}  // namespace cliniqa
