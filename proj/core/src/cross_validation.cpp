#include "cliniqa/cross_validation.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

namespace cliniqa {

namespace {

// Mean of correct_f / size_f computed over a common denominator, so that
// per-fold accuracies sharing a value average to exactly that value.
double mean_accuracy(const std::vector<FoldReport>& folds) {
  constexpr unsigned long long kLimit = 1ULL << 52;
  unsigned long long common = 1;
  bool exact = true;
  for (const auto& f : folds) {
    if (f.test_size == 0) continue;
    const unsigned long long next = std::lcm(common, static_cast<unsigned long long>(f.test_size));
    if (next > kLimit) {
      exact = false;
      break;
    }
    common = next;
  }
  std::size_t counted = 0;
  if (exact) {
    unsigned __int128 numerator = 0;
    for (const auto& f : folds) {
      if (f.test_size == 0) continue;
      numerator += static_cast<unsigned __int128>(f.correct) * (common / f.test_size);
      ++counted;
    }
    if (counted == 0) return 0.0;
    const unsigned __int128 denominator = static_cast<unsigned __int128>(common) * counted;
    if (numerator <= kLimit && denominator <= kLimit) {
      return static_cast<double>(static_cast<unsigned long long>(numerator)) /
             static_cast<double>(static_cast<unsigned long long>(denominator));
    }
  }
  double total = 0.0;
  counted = 0;
  for (const auto& f : folds) {
    if (f.test_size == 0) continue;
    total += static_cast<double>(f.correct) / static_cast<double>(f.test_size);
    ++counted;
  }
  return counted ? total / static_cast<double>(counted) : 0.0;
}

}  // namespace

std::vector<std::vector<std::size_t>> stratified_folds(const LabeledDataset& data, std::size_t folds,
                                                       std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("cross-validation needs at least two folds");
  if (data.size() < folds) {
    throw std::invalid_argument("cross-validation with " + std::to_string(folds) + " folds needs at least " +
                                std::to_string(folds) + " samples, got " + std::to_string(data.size()));
  }
  std::vector<std::vector<std::size_t>> by_class(data.class_count());
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data[i].label].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> out(folds);
  std::size_t next_fold = 0;
  for (auto& rows : by_class) {
    for (std::size_t i = rows.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(rows[i - 1], rows[j]);
    }
    // Continue dealing where the previous class stopped so fold sizes stay balanced.
    for (std::size_t row : rows) {
      out[next_fold].push_back(row);
      next_fold = (next_fold + 1) % folds;
    }
  }
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

CvReport cross_validate(const ClassifierFactory& factory, const LabeledDataset& data, std::size_t folds,
                        std::uint64_t seed) {
  const auto assignment = stratified_folds(data, folds, seed);
  CvReport report;
  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > 0 && counts[c] < folds) {
      report.warnings.push_back("class '" + data.classes()[c] + "' has " + std::to_string(counts[c]) +
                                " samples, fewer than " + std::to_string(folds) + " folds");
    }
  }

  std::vector<bool> held_out(data.size());
  for (std::size_t f = 0; f < folds; ++f) {
    std::fill(held_out.begin(), held_out.end(), false);
    for (std::size_t row : assignment[f]) held_out[row] = true;
    std::vector<std::size_t> train_rows;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!held_out[i]) train_rows.push_back(i);
    }
    const auto train = data.subset(train_rows);
    auto model = factory();
    model->train(train);

    FoldReport fr;
    fr.fold = f;
    fr.train_size = train_rows.size();
    fr.test_size = assignment[f].size();
    for (std::size_t row : assignment[f]) {
      if (model->predict(data[row].x) == data[row].label) ++fr.correct;
    }
    fr.accuracy = fr.test_size ? static_cast<double>(fr.correct) / static_cast<double>(fr.test_size) : 0.0;
    report.folds.push_back(fr);
  }
  report.accuracy = mean_accuracy(report.folds);
  return report;
}

CvReport cross_validate(Algorithm algorithm, const ClassifierParams& params, const LabeledDataset& data,
                        std::size_t folds, std::uint64_t seed) {
  return cross_validate([&] { return make_classifier(algorithm, params); }, data, folds, seed);
}

}  // namespace cliniqa
