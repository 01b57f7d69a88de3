#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/dataset.hpp"
#include "cliniqa/svm.hpp"

namespace cliniqa {

enum class Algorithm { svm, knn, naive_bayes, decision_tree, lda };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::svm, Algorithm::knn, Algorithm::naive_bayes,
                                               Algorithm::decision_tree, Algorithm::lda};

std::string_view to_string(Algorithm a);
/// "svm", "knn", "naive_bayes" (or "nb"), "decision_tree" (or "dt"), "lda" (or "fisher").
Algorithm parse_algorithm(std::string_view name);

std::string_view to_string(KernelType k);
KernelType parse_kernel(std::string_view name);

struct ClassifierParams {
  double penalty = 500.0;  // SVM D
  double gamma = 0.005;    // SVM kernel width
  KernelType kernel = KernelType::erbf;
  double tolerance = 1e-3;
  std::size_t max_iterations = 10'000'000;
  std::size_t k = 3;        // KNN neighbours
  double smoothing = 1.0;   // NB additive smoothing
};

/// A trained (or trainable) model of one of the five algorithms. Multiclass
/// SVM and LDA use one-vs-rest; binary problems train a single machine with
/// class index 1 as the positive side.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual Algorithm algorithm() const = 0;
  virtual void train(const LabeledDataset& data) = 0;

  /// Per-class scores whose argmax (ties to the lowest index) is the
  /// prediction for every algorithm except KNN, whose vote ties follow
  /// neighbour order.
  virtual std::vector<double> scores(std::span<const double> x) const = 0;
  virtual std::size_t predict(std::span<const double> x) const;

  bool trained() const { return trained_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t dimension() const { return dimension_; }
  const ClassifierParams& params() const { return params_; }

  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static std::unique_ptr<Classifier> load(std::istream& in);
  static std::unique_ptr<Classifier> load(const std::filesystem::path& path);

  /// Model payload as a JSON document string (used by save and by composite models).
  virtual std::string serialize() const = 0;
  static std::unique_ptr<Classifier> deserialize(std::string_view json_text);

 protected:
  explicit Classifier(ClassifierParams params) : params_(params) {}
  void require_trained() const;
  void check_input(std::span<const double> x) const;
  void begin_training(const LabeledDataset& data);

  ClassifierParams params_;
  std::vector<std::string> classes_;
  std::size_t dimension_ = 0;
  bool trained_ = false;
  // Set when training data carried a single class: that class is always predicted.
  std::size_t constant_class_ = 0;
  bool constant_ = false;
};

std::unique_ptr<Classifier> make_classifier(Algorithm algorithm, const ClassifierParams& params = {});

}  // namespace cliniqa
