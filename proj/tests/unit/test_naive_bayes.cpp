#include <cliniqa/naive_bayes.hpp>

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <random>

using namespace cliniqa;

namespace {

LabeledDataset two_by_two() {
  LabeledDataset d({"A", "B"}, 2);
  d.add({3.0, 1.0}, 0);
  d.add({1.0, 3.0}, 1);
  return d;
}

}  // namespace

TEST_CASE("two class two term hand posterior") {
  auto model = nb_train(two_by_two());
  // add-one: P(t0|A) = 4/6, P(t0|B) = 2/6, equal priors
  CHECK(std::abs(model.conditionals[0][0] - 4.0 / 6.0) <= 1e-12);
  CHECK(std::abs(model.conditionals[1][0] - 2.0 / 6.0) <= 1e-12);
  std::vector<double> q{1.0, 0.0};
  auto post = model.posteriors(q);
  CHECK(std::abs(post[0] - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(post[1] - 1.0 / 3.0) <= 1e-12);
  CHECK(nb_predict(model, q) == 0);
}

TEST_CASE("priors and conditionals are distributions") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> count(0, 5);
  LabeledDataset d({"a", "b", "c"}, 6);
  for (int i = 0; i < 30; ++i) {
    FeatureVector x(6);
    for (auto& v : x) v = count(rng);
    d.add(x, static_cast<std::size_t>(i % 3));
  }
  auto model = nb_train(d);
  double prior_sum = 0.0;
  for (double p : model.priors) prior_sum += p;
  CHECK(prior_sum == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& row : model.conditionals) {
    double sum = 0.0;
    for (double p : row) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("symmetric data and query tie to class 0") {
  auto model = nb_train(two_by_two());
  std::vector<double> q{1.0, 1.0};
  auto logs = model.log_joint(q);
  CHECK(logs[0] == logs[1]);
  CHECK(model.predict(q) == 0);
}

TEST_CASE("zero vector picks the class with the largest prior") {
  LabeledDataset d({"A", "B"}, 2);
  d.add({1, 0}, 0);
  d.add({0, 1}, 1);
  d.add({0, 2}, 1);
  auto model = nb_train(d);
  std::vector<double> zero{0, 0};
  CHECK(model.predict(zero) == 1);
  CHECK(model.posteriors(zero)[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("single class training data always predicts that class") {
  LabeledDataset d({"A", "B"}, 2);
  d.add({1, 0}, 1);
  d.add({5, 0}, 1);
  auto model = nb_train(d);
  for (auto q : {std::vector<double>{1, 0}, std::vector<double>{0, 9}, std::vector<double>{0, 0}})
    CHECK(model.predict(q) == 1);
}

TEST_CASE("argmax is invariant when every training count is multiplied by a common integer") {
  // exact without smoothing; with add-one smoothing the scaled counts shift the conditionals
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 40; ++trial) {
    LabeledDataset d({"a", "b", "c"}, 5), scaled({"a", "b", "c"}, 5);
    const int factor = 2 + trial % 5;
    for (int i = 0; i < 12; ++i) {
      FeatureVector x(5);
      for (auto& v : x) v = count(rng);
      FeatureVector y = x;
      for (auto& v : y) v *= factor;
      d.add(x, static_cast<std::size_t>(i % 3));
      scaled.add(y, static_cast<std::size_t>(i % 3));
    }
    auto a = nb_train(d, 0.0);
    auto b = nb_train(scaled, 0.0);
    for (int q = 0; q < 20; ++q) {
      FeatureVector x(5);
      for (auto& v : x) v = count(rng) - 1;
      CHECK(a.predict(x) == b.predict(x));
      auto pa = a.posteriors(x), pb = b.posteriors(x);
      for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(pa[c] - pb[c]) <= 1e-12);
    }
  }
}

TEST_CASE("naive bayes errors") {
  LabeledDataset empty({"A", "B"}, 1);
  CHECK_THROWS_AS(nb_train(empty), std::invalid_argument);
  LabeledDataset negative({"A", "B"}, 1);
  negative.add({-1.0}, 0);
  CHECK_THROWS_AS(nb_train(negative), std::invalid_argument);
}
