#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cliniqa/classifier.hpp"
#include "cliniqa/dataset.hpp"

namespace cliniqa {

struct FoldReport {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
};

struct CvReport {
  double accuracy = 0.0;  // mean of per-fold accuracies
  std::vector<FoldReport> folds;
  std::vector<std::string> warnings;
};

using ClassifierFactory = std::function<std::unique_ptr<Classifier>()>;

/// Stratified fold assignment: each class is shuffled with a seeded
/// generator and dealt round-robin across folds. Returns test rows per fold.
std::vector<std::vector<std::size_t>> stratified_folds(const LabeledDataset& data, std::size_t folds,
                                                       std::uint64_t seed);

/// Trains a fresh classifier per fold and scores it on the held-out rows.
/// Throws std::invalid_argument when folds < 2 or the dataset is smaller than folds.
CvReport cross_validate(const ClassifierFactory& factory, const LabeledDataset& data, std::size_t folds = 10,
                        std::uint64_t seed = 42);

CvReport cross_validate(Algorithm algorithm, const ClassifierParams& params, const LabeledDataset& data,
                        std::size_t folds = 10, std::uint64_t seed = 42);

}  // namespace cliniqa
