#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cliniqa/dataset.hpp"

namespace cliniqa {

struct Neighbor {
  std::size_t index = 0;
  double distance = 0.0;
};

/// The k closest training samples by Euclidean distance; equal distances
/// keep the lower sample index first.
std::vector<Neighbor> nearest_neighbors(const LabeledDataset& data, std::span<const double> x, std::size_t k);

/// Majority class among the k nearest neighbours. A vote tie goes to the tied
/// class whose member appears first in neighbour order (the single nearest
/// among the tied classes). Throws std::invalid_argument for an empty dataset
/// or k outside [1, size].
std::size_t knn_predict(const LabeledDataset& data, std::span<const double> x, std::size_t k = 3);

/// Vote counts per class among the k nearest neighbours.
std::vector<double> knn_votes(const LabeledDataset& data, std::span<const double> x, std::size_t k = 3);

}  // namespace cliniqa
