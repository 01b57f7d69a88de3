#include <cliniqa/text.hpp>

#include "doctest.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <string>
#include <vector>

using namespace cliniqa;

TEST_CASE("tokenize lowercases and keeps inner hyphens") {
  auto tokens = tokenize("K-ras mutations, in 33,000 CASES (PanIN).");
  CHECK(tokens == std::vector<std::string>{"k-ras", "mutations", "in", "33", "000", "cases", "panin"});
}

TEST_CASE("tokenize drops leading and trailing hyphens") {
  CHECK(tokenize("-well- known") == std::vector<std::string>{"well", "known"});
  CHECK(tokenize("").empty());
  CHECK(tokenize(" ,.;").empty());
}

TEST_CASE("porter stemmer reference words") {
  CHECK(stem("caresses") == "caress");
  CHECK(stem("ponies") == "poni");
  CHECK(stem("cats") == "cat");
  CHECK(stem("running") == "run");
  CHECK(stem("hopping") == "hop");
  CHECK(stem("relational") == "relat");
  CHECK(stem("conditional") == "condit");
  CHECK(stem("hopeful") == "hope");
  CHECK(stem("adenocarcinomas") == "adenocarcinoma");
  CHECK(stem("resection") == "resect");
}

TEST_CASE("tokens with digits or hyphens are not stemmed") {
  CHECK(stem("k-ras") == "k-ras");
  CHECK(stem("smad4") == "smad4");
  CHECK(stem("19-9") == "19-9");
}

TEST_CASE("stem is a fixed point") {
  for (std::string word : {"generalizations", "oscillators", "effectiveness", "conditionally", "radiotherapies",
                           "hopefulness", "electrical", "formalities"}) {
    auto once = stem(word);
    CHECK(stem(once) == once);
  }
}

TEST_CASE("stopwords are removed before and after stemming") {
  CHECK(is_stopword("the"));
  CHECK_FALSE(is_stopword("pancreas"));
  CHECK(tokenize_and_stem("The drug of choice") == std::vector<std::string>{"drug", "choic"});
  // "overall" stems to "over", itself a stopword
  CHECK(tokenize_and_stem("overall").empty());
}

TEST_CASE("tokenize_and_stem is idempotent and case invariant on random text") {
  const std::vector<std::string> words{"Pancreatic", "ductal",   "adenocarcinoma", "THE",     "of",
                                       "Surgery",    "resections", "K-ras",        "overall", "survival",
                                       "patients",   "treated",  "with",           "gemcitabine", "2010",
                                       "relational", "is",       "hopefully",      "generalizations", "ca"};
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> length(0, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (int i = length(rng); i > 0; --i) text += words[pick(rng)] + (i % 3 == 0 ? ", " : " ");
    auto once = tokenize_and_stem(text);
    CHECK(tokenize_and_stem(join_tokens(once)) == once);
    std::string upper = text;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    CHECK(tokenize_and_stem(upper) == once);
  }
}

TEST_CASE("join_tokens uses the separator") {
  CHECK(join_tokens({"a", "b", "c"}) == "a b c");
  CHECK(join_tokens({"a", "b"}, "|") == "a|b");
  CHECK(join_tokens({}).empty());
}
