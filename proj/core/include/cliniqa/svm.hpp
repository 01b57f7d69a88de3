#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cliniqa/dataset.hpp"

namespace cliniqa {

/// erbf: exp(-gamma * |x - x'|)  (non-squared Euclidean distance)
/// rbf:  exp(-gamma * |x - x'|^2)
enum class KernelType { erbf, rbf, linear };

struct Kernel {
  KernelType type = KernelType::erbf;
  double gamma = 0.005;

  double operator()(std::span<const double> a, std::span<const double> b) const;
};

/// exp(-gamma * ||x - x'||_2). Throws std::invalid_argument on a length mismatch.
double erbf_kernel(std::span<const double> x, std::span<const double> x_prime, double gamma);

struct SvmOptions {
  double penalty = 500.0;  // D, upper bound on each multiplier
  Kernel kernel{};
  double tolerance = 1e-3;  // stop once the maximal KKT violation falls below this
  std::size_t max_iterations = 10'000'000;
};

/// Soft-margin binary SVM: f(x) = sum_i lambda_i y_i K(x, x_i) + theta.
struct SvmModel {
  Kernel kernel{};
  double penalty = 0.0;
  std::vector<FeatureVector> support_vectors;
  std::vector<double> multipliers;  // lambda_i in (0, D]
  std::vector<int> labels;          // y_i in {-1, +1}
  double bias = 0.0;                // theta

  // Training diagnostics.
  std::vector<double> training_multipliers;  // every lambda_i, including zeros, in sample order
  std::vector<double> training_slack;        // xi_i = max(0, 1 - y_i f(x_i))
  std::size_t iterations = 0;
  bool converged = false;

  double decision(std::span<const double> x) const;
  /// +1 when f(x) > 0, otherwise -1.
  int predict(std::span<const double> x) const;
};

/// Dual training by sequential pairwise (SMO-style) updates, choosing the
/// maximal-violating pair at each step (ties to the lowest index).
/// Throws std::invalid_argument unless both labels -1 and +1 occur.
SvmModel svm_train(std::span<const FeatureVector> samples, std::span<const int> labels, const SvmOptions& options = {});

/// One binary machine per class (class c vs. the rest). A class without
/// training samples has no member and scores -infinity.
struct OneVsRestSvm {
  std::vector<std::optional<SvmModel>> members;

  std::vector<double> decision_values(std::span<const double> x) const;
  std::size_t predict(std::span<const double> x) const;
};

OneVsRestSvm svm_train_one_vs_rest(const LabeledDataset& data, const SvmOptions& options = {});

/// Multiclass decision from per-class decision values: argmax, ties to the lowest class.
std::size_t svm_multiclass(std::span<const double> decision_values);

}  // namespace cliniqa
