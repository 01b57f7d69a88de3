#include "cliniqa/fisher.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cliniqa {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

Eigen::Map<const Matrix> as_matrix(const std::vector<double>& storage, std::size_t d) {
  return Eigen::Map<const Matrix>(storage.data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

Eigen::Map<const Vector> as_vector(std::span<const double> v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void moments(const LabeledDataset& data, std::size_t positive, bool want_positive, std::vector<double>& mean,
             std::vector<double>& covariance) {
  const auto d = data.dimension();
  Vector mu = Vector::Zero(static_cast<Eigen::Index>(d));
  std::size_t n = 0;
  for (const auto& s : data.samples()) {
    if ((s.label == positive) != want_positive) continue;
    mu += as_vector(s.x);
    ++n;
  }
  mu /= static_cast<double>(n);
  Matrix cov = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& s : data.samples()) {
    if ((s.label == positive) != want_positive) continue;
    const Vector centered = as_vector(s.x) - mu;
    cov.noalias() += centered * centered.transpose();
  }
  cov /= static_cast<double>(n);
  mean.assign(mu.data(), mu.data() + d);
  covariance.assign(cov.data(), cov.data() + d * d);
}

// Direction for a singular pooled matrix S. When the mean difference has a
// component in the null space of S, that component separates the classes
// with zero within-class scatter and is returned (the limit of
// (S + eps I)^-1 diff as eps -> 0, up to scale). Otherwise the
// pseudo-inverse solution S^+ diff.
Vector singular_direction(const Matrix& pooled, const Vector& diff) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(pooled);
  const Vector& values = eig.eigenvalues();
  const Matrix& vectors = eig.eigenvectors();
  const double largest = values.size() ? std::max(std::abs(values.maxCoeff()), std::abs(values.minCoeff())) : 0.0;
  const double cutoff = largest * static_cast<double>(values.size()) * std::numeric_limits<double>::epsilon();
  Vector null_part = Vector::Zero(diff.size());
  Vector pinv_part = Vector::Zero(diff.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double coefficient = vectors.col(i).dot(diff);
    if (values[i] <= cutoff) {
      null_part += coefficient * vectors.col(i);
    } else {
      pinv_part += (coefficient / values[i]) * vectors.col(i);
    }
  }
  if (null_part.norm() > 1e-9 * diff.norm()) return null_part;
  return pinv_part;
}

}  // namespace

double FisherModel::project(std::span<const double> x) const {
  if (x.size() != dimension) throw std::invalid_argument("fisher: input dimension mismatch");
  return dot(projection, x);
}

std::size_t FisherModel::predict(std::span<const double> x) const { return project(x) > threshold ? 1 : 0; }

FisherModel fisher_train(const LabeledDataset& data, std::size_t positive_class) {
  std::size_t pos = 0;
  for (const auto& s : data.samples()) pos += s.label == positive_class ? 1 : 0;
  if (pos == 0 || pos == data.size()) throw std::invalid_argument("fisher: both classes must be present");

  FisherModel model;
  const auto d = data.dimension();
  model.dimension = d;
  moments(data, positive_class, false, model.mean0, model.covariance0);
  moments(data, positive_class, true, model.mean1, model.covariance1);

  const Matrix pooled = as_matrix(model.covariance0, d) + as_matrix(model.covariance1, d);
  const Vector diff = as_vector(model.mean1) - as_vector(model.mean0);
  Vector w;
  Eigen::FullPivLU<Matrix> lu(pooled);
  if (d > 0 && lu.isInvertible()) {
    w = lu.solve(diff);
  } else {
    model.singular = true;
    w = singular_direction(pooled, diff);
  }
  model.projection.assign(w.data(), w.data() + d);
  model.degenerate = w.isZero(0.0) || w.norm() == 0.0;
  const double p0 = dot(model.projection, model.mean0);
  const double p1 = dot(model.projection, model.mean1);
  model.threshold = (p0 + p1) / 2.0;
  return model;
}

std::size_t fisher_predict(const FisherModel& model, std::span<const double> x) { return model.predict(x); }

double fisher_separation(const FisherModel& model, std::span<const double> direction) {
  if (direction.size() != model.dimension) throw std::invalid_argument("fisher: direction dimension mismatch");
  const auto d = model.dimension;
  const Vector w = as_vector(direction);
  const double between = w.dot(as_vector(model.mean1) - as_vector(model.mean0));
  const double within = w.dot((as_matrix(model.covariance0, d) + as_matrix(model.covariance1, d)) * w);
  if (within <= 0.0) return between == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return between * between / within;
}

std::vector<double> OneVsRestFisher::scores(std::span<const double> x) const {
  std::vector<double> out(members.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (present[c]) out[c] = members[c].project(x) - members[c].threshold;
  }
  return out;
}

std::size_t OneVsRestFisher::predict(std::span<const double> x) const { return argmax_lowest(scores(x)); }

OneVsRestFisher fisher_train_one_vs_rest(const LabeledDataset& data) {
  if (data.populated_classes() < 2) throw std::invalid_argument("fisher: training data must contain at least two classes");
  OneVsRestFisher ensemble;
  ensemble.members.resize(data.class_count());
  ensemble.present.assign(data.class_count(), false);
  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < data.class_count(); ++c) {
    if (counts[c] == 0) continue;
    ensemble.members[c] = fisher_train(data, c);
    ensemble.present[c] = true;
  }
  return ensemble;
}

}  // namespace cliniqa
