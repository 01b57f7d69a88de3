#include "cliniqa/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cliniqa {

std::vector<Neighbor> nearest_neighbors(const LabeledDataset& data, std::span<const double> x, std::size_t k) {
  if (data.empty()) throw std::invalid_argument("knn: empty training set");
  if (k == 0 || k > data.size()) throw std::invalid_argument("knn: k must lie in [1, dataset size]");
  if (x.size() != data.dimension()) throw std::invalid_argument("knn: input dimension mismatch");
  std::vector<Neighbor> all;
  all.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) all.push_back({i, squared_distance(x, data[i].x)});
  auto closer = [](const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), closer);
  all.resize(k);
  for (auto& nb : all) nb.distance = std::sqrt(nb.distance);
  return all;
}

std::vector<double> knn_votes(const LabeledDataset& data, std::span<const double> x, std::size_t k) {
  std::vector<double> votes(data.class_count(), 0.0);
  for (const auto& nb : nearest_neighbors(data, x, k)) votes[data[nb.index].label] += 1.0;
  return votes;
}

std::size_t knn_predict(const LabeledDataset& data, std::span<const double> x, std::size_t k) {
  const auto neighbors = nearest_neighbors(data, x, k);
  std::vector<std::size_t> votes(data.class_count(), 0);
  for (const auto& nb : neighbors) ++votes[data[nb.index].label];
  const auto top = *std::max_element(votes.begin(), votes.end());
  for (const auto& nb : neighbors) {
    const auto label = data[nb.index].label;
    if (votes[label] == top) return label;
  }
  return data[neighbors.front().index].label;
}

}  // namespace cliniqa
