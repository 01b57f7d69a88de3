#include "cliniqa/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cliniqa {

NbModel nb_train(const LabeledDataset& data, double smoothing) {
  if (data.empty()) throw std::invalid_argument("naive bayes: empty training set");
  if (smoothing < 0.0) throw std::invalid_argument("naive bayes: smoothing must be non-negative");
  const auto m = data.class_count();
  const auto v = data.dimension();
  NbModel model;
  model.smoothing = smoothing;
  model.priors.assign(m, 0.0);
  std::vector<std::vector<double>> counts(m, std::vector<double>(v, 0.0));
  for (const auto& s : data.samples()) {
    model.priors[s.label] += 1.0;
    for (std::size_t k = 0; k < v; ++k) {
      if (s.x[k] < 0.0) throw std::invalid_argument("naive bayes: features must be non-negative counts");
      counts[s.label][k] += s.x[k];
    }
  }
  for (auto& p : model.priors) p /= static_cast<double>(data.size());
  model.conditionals.assign(m, std::vector<double>(v, 0.0));
  for (std::size_t c = 0; c < m; ++c) {
    double total = 0.0;
    for (double x : counts[c]) total += x;
    const double denom = total + smoothing * static_cast<double>(v);
    for (std::size_t k = 0; k < v; ++k) {
      model.conditionals[c][k] = denom > 0.0 ? (counts[c][k] + smoothing) / denom : 1.0 / static_cast<double>(v);
    }
  }
  return model;
}

std::vector<double> NbModel::log_joint(std::span<const double> x) const {
  const auto m = priors.size();
  std::vector<double> out(m, -std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < m; ++c) {
    if (x.size() != conditionals[c].size()) throw std::invalid_argument("naive bayes: input dimension mismatch");
    if (priors[c] <= 0.0) continue;
    double score = std::log(priors[c]);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0.0) continue;
      score += x[k] * std::log(conditionals[c][k]);
    }
    out[c] = score;
  }
  return out;
}

std::vector<double> NbModel::posteriors(std::span<const double> x) const {
  auto logs = log_joint(x);
  const double top = *std::max_element(logs.begin(), logs.end());
  std::vector<double> out(logs.size(), 0.0);
  if (!std::isfinite(top)) return out;
  double sum = 0.0;
  for (std::size_t c = 0; c < logs.size(); ++c) {
    out[c] = std::exp(logs[c] - top);
    sum += out[c];
  }
  for (auto& p : out) p /= sum;
  return out;
}

std::size_t NbModel::predict(std::span<const double> x) const { return argmax_lowest(log_joint(x)); }

std::size_t nb_predict(const NbModel& model, std::span<const double> x) { return model.predict(x); }

}  // namespace cliniqa
