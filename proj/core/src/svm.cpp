#include "cliniqa/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cliniqa {

namespace {

constexpr double kTau = 1e-12;

}  // namespace

double erbf_kernel(std::span<const double> x, std::span<const double> x_prime, double gamma) {
  if (x.size() != x_prime.size()) throw std::invalid_argument("erbf_kernel: vector length mismatch");
  return std::exp(-gamma * euclidean_distance(x, x_prime));
}

double Kernel::operator()(std::span<const double> a, std::span<const double> b) const {
  switch (type) {
    case KernelType::erbf: return erbf_kernel(a, b, gamma);
    case KernelType::rbf: return std::exp(-gamma * squared_distance(a, b));
    case KernelType::linear: return dot(a, b);
  }
  return 0.0;
}

double SvmModel::decision(std::span<const double> x) const {
  if (!support_vectors.empty() && x.size() != support_vectors.front().size()) {
    throw std::invalid_argument("svm: input dimension mismatch");
  }
  double f = bias;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) {
    f += multipliers[i] * labels[i] * kernel(x, support_vectors[i]);
  }
  return f;
}

int SvmModel::predict(std::span<const double> x) const { return decision(x) > 0.0 ? 1 : -1; }

SvmModel svm_train(std::span<const FeatureVector> samples, std::span<const int> labels, const SvmOptions& options) {
  const auto n = samples.size();
  if (n != labels.size()) throw std::invalid_argument("svm_train: sample and label counts differ");
  if (!(options.penalty > 0.0)) throw std::invalid_argument("svm_train: penalty D must be positive");
  bool has_pos = false;
  bool has_neg = false;
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw std::invalid_argument("svm_train: labels must be -1 or +1");
  }
  if (!has_pos || !has_neg) throw std::invalid_argument("svm_train: training data must contain both classes");
  for (const auto& s : samples) {
    if (s.size() != samples.front().size()) throw std::invalid_argument("svm_train: ragged samples");
  }

  const double c = options.penalty;
  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = options.kernel(samples[i], samples[j]);
      k[i * n + j] = v;
      k[j * n + i] = v;
    }
  }
  auto q = [&](std::size_t i, std::size_t j) { return labels[i] * labels[j] * k[i * n + j]; };

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a
  auto in_up = [&](std::size_t t) { return (labels[t] == 1 && alpha[t] < c) || (labels[t] == -1 && alpha[t] > 0.0); };
  auto in_low = [&](std::size_t t) { return (labels[t] == 1 && alpha[t] > 0.0) || (labels[t] == -1 && alpha[t] < c); };

  SvmModel model;
  model.kernel = options.kernel;
  model.penalty = c;

  std::size_t iter = 0;
  while (iter < options.max_iterations) {
    std::size_t i = n;
    std::size_t j = n;
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -labels[t] * grad[t];
      if (in_up(t) && v > g_max) {
        g_max = v;
        i = t;
      }
      if (in_low(t) && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    if (i == n || j == n || g_max - g_min < options.tolerance) {
      model.converged = true;
      break;
    }
    ++iter;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (labels[i] != labels[j]) {
      double quad = k[i * n + i] + k[j * n + j] + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = k[i * n + i] + k[j * n + j] - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;
  }
  model.iterations = iter;

  // theta = -rho, rho averaged over free multipliers (midpoint of the feasible range otherwise).
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = labels[t] * grad[t];
    if (alpha[t] >= c) {
      if (labels[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (labels[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;
  model.bias = -rho;

  model.training_multipliers = alpha;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_vectors.push_back(samples[t]);
      model.multipliers.push_back(alpha[t]);
      model.labels.push_back(labels[t]);
    }
  }
  model.training_slack.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    // f(x_t) = y_t * grad_t + y_t + theta, from grad = Q alpha - e.
    const double f = labels[t] * grad[t] + labels[t] + model.bias;
    model.training_slack[t] = std::max(0.0, 1.0 - labels[t] * f);
  }
  return model;
}

std::vector<double> OneVsRestSvm::decision_values(std::span<const double> x) const {
  std::vector<double> values(members.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (members[c]) values[c] = members[c]->decision(x);
  }
  return values;
}

std::size_t OneVsRestSvm::predict(std::span<const double> x) const { return svm_multiclass(decision_values(x)); }

OneVsRestSvm svm_train_one_vs_rest(const LabeledDataset& data, const SvmOptions& options) {
  if (data.populated_classes() < 2) throw std::invalid_argument("svm: training data must contain at least two classes");
  std::vector<FeatureVector> xs;
  xs.reserve(data.size());
  for (const auto& s : data.samples()) xs.push_back(s.x);
  OneVsRestSvm ensemble;
  ensemble.members.resize(data.class_count());
  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < data.class_count(); ++c) {
    if (counts[c] == 0) continue;
    std::vector<int> ys;
    ys.reserve(data.size());
    for (const auto& s : data.samples()) ys.push_back(s.label == c ? 1 : -1);
    ensemble.members[c] = svm_train(xs, ys, options);
  }
  return ensemble;
}

std::size_t svm_multiclass(std::span<const double> decision_values) { return argmax_lowest(decision_values); }

}  // namespace cliniqa
