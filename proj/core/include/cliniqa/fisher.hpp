#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cliniqa/dataset.hpp"

namespace cliniqa {

/// Two-class Fisher discriminant. Class 0 projects below the threshold,
/// class 1 above it.
struct FisherModel {
  std::size_t dimension = 0;
  std::vector<double> mean0;
  std::vector<double> mean1;
  std::vector<double> covariance0;  // row-major dimension x dimension
  std::vector<double> covariance1;
  std::vector<double> projection;   // w = (S0 + S1)^-1 (mu1 - mu0)
  double threshold = 0.0;           // midpoint of the projected class means
  bool singular = false;            // pooled matrix singular: null-space or pseudo-inverse direction
  bool degenerate = false;          // w == 0, every input falls on class 0

  double project(std::span<const double> x) const;
  /// 1 when w.x > threshold, otherwise 0.
  std::size_t predict(std::span<const double> x) const;
};

/// Samples of `positive_class` form class 1, every other sample class 0.
/// Throws std::invalid_argument unless both sides are non-empty.
/// Covariances are population (1/n) estimates.
FisherModel fisher_train(const LabeledDataset& data, std::size_t positive_class = 1);
std::size_t fisher_predict(const FisherModel& model, std::span<const double> x);

/// Separation criterion S(w) = (w.(mu1 - mu0))^2 / (w' (S0 + S1) w).
double fisher_separation(const FisherModel& model, std::span<const double> direction);

/// One discriminant per class (class c vs. the rest); predicts the class with
/// the largest w_c.x - threshold_c, ties to the lowest class.
struct OneVsRestFisher {
  std::vector<FisherModel> members;
  std::vector<bool> present;

  std::vector<double> scores(std::span<const double> x) const;
  std::size_t predict(std::span<const double> x) const;
};

OneVsRestFisher fisher_train_one_vs_rest(const LabeledDataset& data);

}  // namespace cliniqa
