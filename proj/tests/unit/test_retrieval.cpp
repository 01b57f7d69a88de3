#include <cliniqa/retrieval.hpp>

#include "doctest.h"
#include "fixtures.hpp"

#include <algorithm>
#include <stdexcept>
#include <cmath>
#include <numeric>
#include <random>

using namespace cliniqa;

namespace {

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, char('A' + i)));
  return out;
}

// Descending score, ascending position on ties.
std::vector<std::size_t> argsort(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

TEST_CASE("cosine") {
  std::vector<double> q{1, 1, 0}, d{0.6, 0, 0.8};
  CHECK(cosine(q, d).value == doctest::Approx(0.6 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cosine(q, d).value == doctest::Approx(0.42426).epsilon(1e-5));
  CHECK(cosine(d, d).value == doctest::Approx(1.0));
  std::vector<double> a{1, 0}, b{0, 1}, zero{0, 0};
  CHECK(cosine(a, b).value == 0.0);
  auto z = cosine(zero, a);
  CHECK(z.zero_vector);
  CHECK(z.value == 0.0);
  CHECK_THROWS_AS(cosine(a, q), std::invalid_argument);
}

TEST_CASE("sim is the inner product") {
  std::vector<double> q{0, 1, 0}, d{0.6, 0.0, 0.8}, e{0.0, 0.28, 0.96};
  std::vector<double> zero{0, 0, 0};
  CHECK(sim(zero, d) == 0.0);
  CHECK(sim(q, e) == 0.28);
  SparseVector sparse{{1, 2}, {0.28, 0.96}};
  CHECK(sim(q, sparse) == 0.28);
  std::vector<double> shorter{1, 0};
  CHECK_THROWS_AS(sim(shorter, d), std::invalid_argument);
}

TEST_CASE("sim and cosine rank a five document fixture identically") {
  std::vector<std::vector<double>> docs{
      {3, 0, 1, 0}, {0, 2, 2, 0}, {1, 1, 1, 1}, {0, 0, 0, 5}, {4, 4, 0, 0}};
  std::vector<double> q{1, 0, 1, 0};
  std::vector<double> by_sim, by_cos;
  for (const auto& d : docs) {
    auto n = normalize(d).values;
    by_sim.push_back(sim(q, n));
    by_cos.push_back(cosine(q, d).value);
  }
  CHECK(argsort(by_sim) == argsort(by_cos));
}

TEST_CASE("extract_candidates keeps documents scoring on both vectors") {
  auto ids = names(2);
  std::vector<double> phrase{0.5, 0.3}, tag{0.0, 0.2};
  auto set = extract_candidates(ids, phrase, tag);
  REQUIRE(set.candidates.size() == 1);
  CHECK_FALSE(set.fallback);
  CHECK(set.candidates[0].doc_id == "B");
  CHECK(set.candidates[0].combined == doctest::Approx(0.5));
  CHECK(set.candidates[0].row == 1);
}

TEST_CASE("extract_candidates truncates to ten") {
  auto ids = names(12);
  std::vector<double> phrase(12), tag(12);
  for (std::size_t i = 0; i < 12; ++i) phrase[i] = tag[i] = 0.1 + 0.01 * double(i);
  auto set = extract_candidates(ids, phrase, tag);
  CHECK(set.candidates.size() == 10);
  CHECK(set.candidates.front().doc_id == "L");
}

TEST_CASE("extract_candidates falls back to the union") {
  auto ids = names(3);
  std::vector<double> zero(3, 0.0);
  auto none = extract_candidates(ids, zero, zero);
  CHECK(none.candidates.empty());
  CHECK(none.fallback);
  std::vector<double> phrase{0.4, 0.0, 0.0}, tag{0.0, 0.0, 0.7};
  auto u = extract_candidates(ids, phrase, tag);
  CHECK(u.fallback);
  REQUIRE(u.candidates.size() == 2);
  CHECK(u.candidates[0].doc_id == "C");
  CHECK(u.candidates[1].doc_id == "A");
}

TEST_CASE("extract_candidates ties, bias and errors") {
  std::vector<std::string> ids{"b", "a", "c"};
  std::vector<double> phrase{0.5, 0.5, 0.2}, tag{0.5, 0.5, 0.2};
  auto set = extract_candidates(ids, phrase, tag);
  CHECK(set.candidates[0].doc_id == "a");
  CHECK(set.candidates[1].doc_id == "b");
  ExtractOptions biased;
  biased.tag_bias = 0.0;
  std::vector<double> p2{0.1, 0.2, 0.3}, t2{0.9, 0.1, 0.1};
  CHECK(extract_candidates(ids, p2, t2, biased).candidates[0].doc_id == "c");
  std::vector<std::string> empty_ids;
  std::vector<double> empty;
  CHECK_THROWS_AS(extract_candidates(empty_ids, empty, empty), std::invalid_argument);
  std::vector<double> two{0.1, 0.1};
  CHECK_THROWS_AS(extract_candidates(ids, two, tag), std::invalid_argument);
  ExtractOptions zero_k;
  zero_k.top_k = 0;
  CHECK_THROWS_AS(extract_candidates(ids, phrase, tag, zero_k), std::invalid_argument);
}

TEST_CASE("extract_candidates properties on random scores") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    auto ids = names(15);
    std::vector<double> phrase(15), tag(15);
    for (std::size_t i = 0; i < 15; ++i) {
      phrase[i] = u(rng) < 0.3 ? 0.0 : std::round(u(rng) * 10) / 10;
      tag[i] = u(rng) < 0.3 ? 0.0 : std::round(u(rng) * 10) / 10;
    }
    auto set = extract_candidates(ids, phrase, tag);
    CHECK(set.candidates.size() <= 10);
    for (std::size_t i = 0; i < set.candidates.size(); ++i) {
      const auto& c = set.candidates[i];
      CHECK(c.combined == c.phrase_score + c.tag_score);
      if (!set.fallback) CHECK((c.phrase_score > 0 && c.tag_score > 0));
      if (i) CHECK(set.candidates[i - 1].combined >= c.combined);
    }
    CHECK(extract_candidates(ids, phrase, tag).candidates.size() == set.candidates.size());

    // raising one document's phrase score never lowers its position
    std::uniform_int_distribution<std::size_t> pick(0, 14);
    const auto who = pick(rng);
    auto position = [&](const CandidateSet& s) {
      for (std::size_t i = 0; i < s.candidates.size(); ++i)
        if (s.candidates[i].row == who) return i;
      return std::size_t{99};
    };
    auto raised = phrase;
    raised[who] += 0.35;
    auto after = extract_candidates(ids, raised, tag);
    if (after.fallback == set.fallback) CHECK(position(after) <= position(set));
  }
}

TEST_CASE("formulate_query sets bits for vocabulary terms") {
  const auto& lexicon = testing::minicorpus_lexicon();
  auto index = build_index(testing::minicorpus(), lexicon);
  auto m = map_text("Is surgery or surgery better for pancreatic cancer and the moon?", lexicon);
  auto q = formulate_query(m, index);
  CHECK(q.phrases.size() == index.vocabulary(FeatureSet::phrases).size());
  CHECK(q.tags.size() == index.vocabulary(FeatureSet::tags).size());
  CHECK(q.matched_phrases == std::vector<std::string>{"pancreatic cancer", "surgery"});
  for (std::size_t c = 0; c < q.phrases.size(); ++c) {
    const auto& term = index.vocabulary(FeatureSet::phrases)[c];
    CHECK(q.phrases[c] == ((term == "pancreatic cancer" || term == "surgery") ? 1.0 : 0.0));
  }
  CHECK(q.tags[*index.column_of(TermKind::tag, "Therapeutic or Preventive Procedure")] == 1.0);
  CHECK(q.tags[*index.column_of(TermKind::tag, "Neoplastic Process")] == 1.0);

  auto nothing = formulate_query(map_text("The moon is bright.", lexicon), index);
  CHECK(nothing.empty());
  CHECK(std::all_of(nothing.phrases.begin(), nothing.phrases.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("score_documents and retrieve on the mini-corpus") {
  const auto& lexicon = testing::minicorpus_lexicon();
  auto index = build_index(testing::minicorpus(), lexicon);
  auto m = map_text("What is the drug of choice for acute pancreatitis?", lexicon);
  auto q = formulate_query(m, index);
  auto scores = score_documents(q.phrases, index, FeatureSet::phrases);
  REQUIRE(scores.size() == index.document_count());
  for (std::size_t r = 0; r < scores.size(); ++r)
    CHECK(scores[r] == doctest::Approx(sim(q.phrases, index.matrix(FeatureSet::phrases, Weighting::normalized)
                                                          .dense_row(r))));
  auto set = retrieve(m, index);
  CHECK_FALSE(set.candidates.empty());
  CHECK(set.candidates.size() <= 10);
}
