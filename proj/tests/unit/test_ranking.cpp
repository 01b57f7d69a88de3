#include <cliniqa/ranking.hpp>
#include <cliniqa/text.hpp>

#include "doctest.h"
#include "fixtures.hpp"

#include <algorithm>
#include <stdexcept>
#include <random>
#include <set>

using namespace cliniqa;

namespace {

const std::vector<std::string> kFocus{"Clinical Drug", "Pharmacologic Substance"};

QuestionTerms terms(std::size_t n) {
  QuestionTerms q;
  for (std::size_t i = 0; i < n; ++i) q.terms.push_back("t" + std::to_string(10 + i));
  return q;
}

// A sentence carrying the first `matched` question terms, flagged or not.
SentenceConcepts sentence(std::size_t matched, bool flagged) {
  SentenceConcepts s;
  for (std::size_t i = 0; i < matched; ++i) s.terms.insert("t" + std::to_string(10 + i));
  if (flagged) s.tags.insert("Clinical Drug");
  else s.tags.insert("Finding");
  return s;
}

CandidateAbstract abstract(std::string id, std::vector<SentenceConcepts> sentences) {
  CandidateAbstract c;
  c.doc_id = std::move(id);
  c.title = "title " + c.doc_id;
  for (std::size_t j = 0; j < sentences.size(); ++j) c.sentence_texts.push_back("sentence " + std::to_string(j));
  c.sentences = std::move(sentences);
  return c;
}

CandidateAbstract random_abstract(std::mt19937& rng, std::string id, std::size_t total, bool allow_flag) {
  std::uniform_int_distribution<std::size_t> count(1, 6), match(0, total);
  std::bernoulli_distribution flag(0.5);
  std::vector<SentenceConcepts> s;
  for (std::size_t j = count(rng); j > 0; --j) s.push_back(sentence(match(rng), allow_flag && flag(rng)));
  return abstract(std::move(id), std::move(s));
}

std::vector<std::string> order(const RankedAnswer& a) {
  std::vector<std::string> ids;
  for (const auto& r : a.abstracts) ids.push_back(r.doc_id);
  return ids;
}

}  // namespace

TEST_CASE("sentence flag") {
  CHECK(sentence_flag(SentenceConcepts{}, kFocus) == 0);
  SentenceConcepts qualitative;
  qualitative.tags.insert("Qualitative Concept");
  std::vector<std::string> class4{"Qualitative Concept"};
  CHECK(sentence_flag(qualitative, class4) == 1);
  CHECK(sentence_flag(qualitative, kFocus) == 0);
}

TEST_CASE("KRAS abstract surgery sentence is flagged for a procedure question") {
  const AbstractDoc* doc = nullptr;
  for (const auto& d : testing::minicorpus())
    if (d.doc_id == "16169155") doc = &d;
  REQUIRE(doc);
  auto concepts = sentence_concepts(*doc, testing::minicorpus_lexicon(), TermMode::phrases);
  REQUIRE(concepts.size() == 9);
  std::vector<std::string> class3{"Therapeutic or Preventive Procedure", "Diagnostic Procedure"};
  CHECK(doc->sentences[2].text.rfind("Surgery represents", 0) == 0);
  CHECK(sentence_flag(concepts[2], class3) == 1);
  CHECK(sentence_flag(concepts[0], class3) == 0);
}

TEST_CASE("line score hand cases") {
  auto q = terms(4);
  auto half = line_score(sentence(2, true), q, kFocus);
  CHECK(half.value() == 0.5);
  CHECK(half.value(100) == 50.0);
  CHECK(line_score(sentence(4, true), q, kFocus).value() == 1.0);
  CHECK(line_score(sentence(4, false), q, kFocus).value() == 0.0);
  auto none = line_score(sentence(2, true), QuestionTerms{}, kFocus);
  CHECK(none.undefined);
  CHECK(none.value() == 0.0);
}

TEST_CASE("line scores are bounded and vanish without the flag") {
  std::mt19937 rng(2);
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<std::size_t> total(1, 8);
    auto q = terms(total(rng));
    std::uniform_int_distribution<std::size_t> match(0, q.terms.size());
    auto s = sentence(match(rng), i % 2 == 0);
    auto ls = line_score(s, q, kFocus);
    CHECK((ls.value() >= 0.0 && ls.value() <= 1.0));
    if (!ls.flag) CHECK(ls.value() == 0.0);
  }
}

TEST_CASE("rank order and tie rules") {
  auto q = terms(20);
  std::vector<CandidateAbstract> c{
      abstract("b", {sentence(9, true), sentence(9, true)}),  // 0.45 + 0.45
      abstract("a", {sentence(18, true), sentence(20, false)}),  // 0.9
      abstract("z", {sentence(20, true), sentence(4, true)}),  // 1.2
      abstract("d", {sentence(8, true)}),  // 0.4
      abstract("c", {sentence(8, true)}),  // 0.4
  };
  auto ranked = rank_candidates(c, q, kFocus);
  CHECK(order(ranked) == std::vector<std::string>{"z", "a", "b", "c", "d"});
  CHECK(ranked.abstracts[0].abstract_score == doctest::Approx(1.2));
  CHECK(ranked.abstracts[1].abstract_score == doctest::Approx(0.9));
  CHECK(ranked.abstracts[1].max_line_score == doctest::Approx(0.9));
  CHECK(ranked.abstracts[2].max_line_score == doctest::Approx(0.45));
  for (std::size_t i = 0; i < ranked.abstracts.size(); ++i) CHECK(ranked.abstracts[i].rank == i + 1);

  // both 0.45 sentences of "b" reach the maximum and are highlighted
  const auto& b = ranked.abstracts[2];
  CHECK(b.sentences[0].highlighted);
  CHECK(b.sentences[1].highlighted);
  CHECK(b.best_sentence == 0u);
  CHECK_FALSE(ranked.abstracts[1].sentences[1].highlighted);

  CHECK(rank_candidates(std::vector<CandidateAbstract>{}, q, kFocus).abstracts.empty());
}

TEST_CASE("abstracts without any positive line score have no highlight") {
  auto q = terms(3);
  std::vector<CandidateAbstract> c{abstract("x", {sentence(3, false), sentence(0, true)})};
  auto ranked = rank_candidates(c, q, kFocus);
  CHECK_FALSE(ranked.abstracts[0].best_sentence.has_value());
  for (const auto& s : ranked.abstracts[0].sentences) CHECK_FALSE(s.highlighted);
}

TEST_CASE("ranking properties on random candidate sets") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> total_dist(1, 7), count(1, 9);
    const auto total = total_dist(rng);
    auto q = terms(total);
    std::vector<CandidateAbstract> c;
    for (std::size_t i = count(rng); i > 0; --i) c.push_back(random_abstract(rng, "doc" + std::to_string(i), total, true));

    auto fractions = rank_candidates(c, q, kFocus);
    auto percents = rank_candidates(c, q, kFocus, RankOptions{100.0});
    CHECK(order(fractions) == order(percents));

    for (std::size_t i = 0; i < fractions.abstracts.size(); ++i) {
      const auto& a = fractions.abstracts[i];
      double sum = 0.0;
      for (const auto& s : a.sentences) {
        sum += s.line_score;
        if (s.highlighted) CHECK(s.flag == 1);
      }
      CHECK(a.abstract_score == doctest::Approx(sum).epsilon(1e-12));
      if (i) {
        const auto& prev = fractions.abstracts[i - 1];
        CHECK(prev.abstract_score >= a.abstract_score - 1e-12);
      }
    }

    // dominance: a full-overlap flagged sentence beats every abstract with no flagged sentence
    std::vector<CandidateAbstract> d;
    for (std::size_t i = 0; i < 6; ++i) d.push_back(random_abstract(rng, "a" + std::to_string(i), total, false));
    d.push_back(random_abstract(rng, "zz", total, true));
    d.back().sentences.push_back(sentence(total, true));
    d.back().sentence_texts.push_back("answer");
    auto dom = rank_candidates(d, q, kFocus);
    CHECK(dom.abstracts.front().doc_id == "zz");

    // monotonicity: adding a flagged overlapping sentence never lowers the score
    auto grown = c.front();
    std::uniform_int_distribution<std::size_t> some(1, total);
    grown.sentences.push_back(sentence(some(rng), true));
    grown.sentence_texts.push_back("extra");
    std::vector<CandidateAbstract> one{c.front()}, two{grown};
    CHECK(rank_candidates(two, q, kFocus).abstracts[0].abstract_score >=
          rank_candidates(one, q, kFocus).abstracts[0].abstract_score);
  }
}

TEST_CASE("full ties fall back to ascending doc id") {
  auto q = terms(2);
  std::vector<CandidateAbstract> c{abstract("m", {sentence(1, true)}), abstract("k", {sentence(1, true)}),
                                   abstract("q", {sentence(1, true)})};
  CHECK(order(rank_candidates(c, q, kFocus)) == std::vector<std::string>{"k", "m", "q"});
}

TEST_CASE("question terms by mode") {
  ConceptMapping m;
  m.phrases = {{"acute pancreatitis", 1}, {"drug of choice", 2}};
  auto phrases = question_terms(m, "What is the drug of choice for acute pancreatitis?", TermMode::phrases);
  CHECK(phrases.terms == std::vector<std::string>{"acute pancreatitis", "drug of choice"});
  auto words = question_terms(m, "What is the drug of choice for acute pancreatitis?", TermMode::words);
  auto stems = tokenize_and_stem("What is the drug of choice for acute pancreatitis?");
  std::set<std::string> distinct(stems.begin(), stems.end());
  CHECK(words.terms == std::vector<std::string>(distinct.begin(), distinct.end()));
  CHECK(std::find(words.terms.begin(), words.terms.end(), "drug") != words.terms.end());
  CHECK(parse_term_mode("words") == TermMode::words);
  CHECK_THROWS_AS(parse_term_mode("letters"), std::invalid_argument);
}
