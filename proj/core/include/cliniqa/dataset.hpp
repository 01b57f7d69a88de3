#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cliniqa {

using FeatureVector = std::vector<double>;

struct Sample {
  FeatureVector x;
  std::size_t label = 0;  // index into LabeledDataset::classes()
  std::string id;
};

/// Training samples over a fixed feature dimension and an ordered class list.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::vector<std::string> classes, std::size_t dimension);

  /// Throws std::invalid_argument on a dimension mismatch or unknown label.
  void add(FeatureVector x, std::size_t label, std::string id = {});

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  std::size_t dimension() const { return dimension_; }
  std::size_t class_count() const { return classes_.size(); }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<Sample>& samples() const { return samples_; }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }

  std::vector<std::size_t> class_counts() const;
  /// Number of classes with at least one sample.
  std::size_t populated_classes() const;
  LabeledDataset subset(std::span<const std::size_t> rows) const;

 private:
  std::vector<std::string> classes_;
  std::size_t dimension_ = 0;
  std::vector<Sample> samples_;
};

/// Index of the largest value; ties resolve to the lowest index.
std::size_t argmax_lowest(std::span<const double> values);

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

/// Sparse exchange format, one sample per line: `id label (index:weight)*`.
/// A leading `# classes a,b,c dimension N` line fixes the class order and width.
void write_sparse_dataset(std::ostream& out, const LabeledDataset& data);
LabeledDataset read_sparse_dataset(std::istream& in);

}  // namespace cliniqa
