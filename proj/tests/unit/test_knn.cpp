#include <cliniqa/knn.hpp>

#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <random>

using namespace cliniqa;

namespace {

// Exhaustive scan: all distances, stable order by (distance, index), majority
// vote, vote ties to the tied class met first in neighbour order.
std::size_t brute_force(const LabeledDataset& data, const std::vector<double>& x, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) d += (x[j] - data[i].x[j]) * (x[j] - data[i].x[j]);
    all.emplace_back(d, i);
  }
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> votes(data.class_count(), 0);
  for (std::size_t i = 0; i < k; ++i) ++votes[data[all[i].second].label];
  const auto best = *std::max_element(votes.begin(), votes.end());
  for (std::size_t i = 0; i < k; ++i) {
    const auto label = data[all[i].second].label;
    if (votes[label] == best) return label;
  }
  return 0;
}

}  // namespace

TEST_CASE("knn basics") {
  LabeledDataset d({"A", "B"}, 1);
  d.add({0.0}, 0);
  d.add({1.0}, 0);
  d.add({2.0}, 1);
  d.add({10.0}, 1);
  std::vector<double> at_b{10.0};
  CHECK(knn_predict(d, at_b, 1) == 1);
  std::vector<double> near_a{0.6};
  CHECK(knn_predict(d, near_a, 3) == 0);  // votes A, A, B
  CHECK(knn_votes(d, near_a, 3) == std::vector<double>{2.0, 1.0});
  auto nn = nearest_neighbors(d, near_a, 2);
  CHECK(nn[0].index == 1);
  CHECK(nn[1].index == 0);
  CHECK(nn[0].distance == doctest::Approx(0.4));
}

TEST_CASE("knn distance and vote ties") {
  LabeledDataset d({"A", "B"}, 1);
  d.add({-1.0}, 1);
  d.add({1.0}, 0);
  std::vector<double> origin{0.0};
  // equal distances: lower sample index first, so the nearest is class B
  CHECK(nearest_neighbors(d, origin, 2)[0].index == 0);
  CHECK(knn_predict(d, origin, 2) == 1);
  CHECK(knn_predict(d, origin, 1) == 1);
}

TEST_CASE("knn errors") {
  LabeledDataset empty({"A", "B"}, 1);
  std::vector<double> x{0.0};
  CHECK_THROWS_AS(knn_predict(empty, x, 1), std::invalid_argument);
  LabeledDataset d({"A", "B"}, 1);
  d.add({0.0}, 0);
  CHECK_THROWS_AS(knn_predict(d, x, 0), std::invalid_argument);
  CHECK_THROWS_AS(knn_predict(d, x, 2), std::invalid_argument);
}

TEST_CASE("knn matches the exhaustive scan on random queries") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coord(0, 4);  // small integer grid, many ties
  std::size_t queries = 0;
  for (int set = 0; set < 25; ++set) {
    const std::size_t classes = 2 + set % 3;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < classes; ++c) names.push_back("c" + std::to_string(c));
    LabeledDataset d(names, 3);
    std::uniform_int_distribution<std::size_t> label(0, classes - 1);
    for (int i = 0; i < 30; ++i) d.add({double(coord(rng)), double(coord(rng)), double(coord(rng))}, label(rng));
    for (int q = 0; q < 24; ++q, ++queries) {
      std::vector<double> x{double(coord(rng)), double(coord(rng)), double(coord(rng))};
      for (std::size_t k : {1, 2, 3, 4, 7}) CHECK(knn_predict(d, x, k) == brute_force(d, x, k));
    }
  }
  CHECK(queries >= 500);
}
