#include "cliniqa/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cliniqa {

namespace {

constexpr double kGainEpsilon = 1e-12;

std::vector<std::size_t> histogram(const LabeledDataset& data, std::span<const std::size_t> rows) {
  std::vector<std::size_t> counts(data.class_count(), 0);
  for (auto r : rows) ++counts[data[r].label];
  return counts;
}

std::size_t majority(std::span<const std::size_t> counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return best;
}

std::size_t grow(const LabeledDataset& data, std::vector<std::size_t> rows, std::size_t parent_majority,
                 std::vector<TreeNode>& nodes) {
  const auto index = nodes.size();
  nodes.emplace_back();
  if (rows.empty()) {
    nodes[index].label = parent_majority;
    return index;
  }
  const auto counts = histogram(data, rows);
  nodes[index].samples = rows.size();
  nodes[index].label = majority(counts);
  const auto populated = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; });
  if (populated <= 1) return index;
  auto split = best_split(data, rows);
  if (!split) return index;

  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  for (auto r : rows) (data[r].x[split->feature] <= split->threshold ? left : right).push_back(r);
  const auto label = nodes[index].label;
  const auto l = grow(data, std::move(left), label, nodes);
  const auto r = grow(data, std::move(right), label, nodes);
  auto& node = nodes[index];
  node.leaf = false;
  node.feature = split->feature;
  node.threshold = split->threshold;
  node.left = l;
  node.right = r;
  return index;
}

std::size_t depth_of(const std::vector<TreeNode>& nodes, std::size_t i) {
  if (nodes[i].leaf) return 0;
  return 1 + std::max(depth_of(nodes, nodes[i].left), depth_of(nodes, nodes[i].right));
}

}  // namespace

double entropy(std::span<const std::size_t> class_counts) {
  std::size_t total = 0;
  for (auto c : class_counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : class_counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::optional<SplitChoice> best_split(const LabeledDataset& data, std::span<const std::size_t> rows) {
  if (rows.empty()) return std::nullopt;
  const auto parent_counts = histogram(data, rows);
  const double parent_entropy = entropy(parent_counts);
  const double total = static_cast<double>(rows.size());
  std::optional<SplitChoice> best;
  std::vector<std::pair<double, std::size_t>> column(rows.size());
  for (std::size_t f = 0; f < data.dimension(); ++f) {
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = {data[rows[i]].x[f], data[rows[i]].label};
    std::sort(column.begin(), column.end());
    std::vector<std::size_t> left(data.class_count(), 0);
    std::vector<std::size_t> right = parent_counts;
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      ++left[column[i].second];
      --right[column[i].second];
      if (column[i].first == column[i + 1].first) continue;
      const double threshold = (column[i].first + column[i + 1].first) / 2.0;
      const double n_left = static_cast<double>(i + 1);
      const double gain = parent_entropy - (n_left / total) * entropy(left) - ((total - n_left) / total) * entropy(right);
      if (!best || gain > best->gain + kGainEpsilon) best = SplitChoice{f, threshold, gain};
    }
  }
  return best;
}

DecisionTree dt_train(const LabeledDataset& data) {
  if (data.empty()) throw std::invalid_argument("decision tree: empty training set");
  DecisionTree tree;
  std::vector<std::size_t> rows(data.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  grow(data, std::move(rows), 0, tree.nodes);
  return tree;
}

std::size_t DecisionTree::predict(std::span<const double> x) const {
  if (nodes.empty()) throw std::logic_error("decision tree: predict on an empty tree");
  std::size_t i = 0;
  while (!nodes[i].leaf) {
    if (nodes[i].feature >= x.size()) throw std::invalid_argument("decision tree: input dimension mismatch");
    i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
  }
  return nodes[i].label;
}

std::size_t DecisionTree::depth() const { return nodes.empty() ? 0 : depth_of(nodes, 0); }

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.leaf; }));
}

std::size_t dt_predict(const DecisionTree& tree, std::span<const double> x) { return tree.predict(x); }

}  // namespace cliniqa
