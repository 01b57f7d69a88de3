#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cliniqa/dataset.hpp"

namespace cliniqa {

struct TreeNode {
  bool leaf = true;
  std::size_t label = 0;      // leaf class, or majority class of an internal node
  std::size_t feature = 0;    // internal: x[feature] <= threshold goes left
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t samples = 0;
};

/// Binary-threshold tree grown top-down by information gain; nodes[0] is the root.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  std::size_t predict(std::span<const double> x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
};

struct SplitChoice {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

/// Shannon entropy (bits) of a class histogram.
double entropy(std::span<const std::size_t> class_counts);

/// Highest-gain (feature, threshold) over the given rows, thresholds at
/// midpoints of consecutive distinct values. Ties keep the lower feature,
/// then the lower threshold. nullopt when no feature takes two values.
std::optional<SplitChoice> best_split(const LabeledDataset& data, std::span<const std::size_t> rows);

/// Grows until a node is pure, has no splittable feature, or is empty
/// (majority-class leaves for the last two). No pruning.
DecisionTree dt_train(const LabeledDataset& data);
std::size_t dt_predict(const DecisionTree& tree, std::span<const double> x);

}  // namespace cliniqa
