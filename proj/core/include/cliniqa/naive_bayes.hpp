#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cliniqa/dataset.hpp"

namespace cliniqa {

/// Multinomial naive Bayes over count features.
struct NbModel {
  double smoothing = 1.0;
  std::vector<double> priors;                    // P(C_i), sums to 1
  std::vector<std::vector<double>> conditionals;  // P(x_k | C_i), each row sums to 1

  /// log P(C_i) + sum_k x_k log P(x_k | C_i); zero counts contribute nothing.
  std::vector<double> log_joint(std::span<const double> x) const;
  /// P(C_i | X), normalized over classes.
  std::vector<double> posteriors(std::span<const double> x) const;
  /// argmax of the posterior, ties to the lowest class index.
  std::size_t predict(std::span<const double> x) const;
};

/// Priors from class frequencies; conditionals (count + smoothing) / (total + smoothing * V).
/// Throws std::invalid_argument for an empty dataset or negative features.
NbModel nb_train(const LabeledDataset& data, double smoothing = 1.0);

std::size_t nb_predict(const NbModel& model, std::span<const double> x);

}  // namespace cliniqa
