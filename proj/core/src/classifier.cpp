#include "cliniqa/classifier.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cliniqa/decision_tree.hpp"
#include "cliniqa/errors.hpp"
#include "cliniqa/fisher.hpp"
#include "cliniqa/knn.hpp"
#include "cliniqa/naive_bayes.hpp"

namespace cliniqa {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kModelFormat = "cliniqa-model";
constexpr int kModelVersion = 1;

json params_json(const ClassifierParams& p) {
  return json{{"penalty", p.penalty},   {"gamma", p.gamma}, {"kernel", std::string(to_string(p.kernel))},
              {"tolerance", p.tolerance}, {"max_iterations", p.max_iterations}, {"k", p.k},
              {"smoothing", p.smoothing}};
}

ClassifierParams params_from_json(const json& j) {
  ClassifierParams p;
  p.penalty = j.at("penalty").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.kernel = parse_kernel(j.at("kernel").get<std::string>());
  p.tolerance = j.at("tolerance").get<double>();
  p.max_iterations = j.at("max_iterations").get<std::size_t>();
  p.k = j.at("k").get<std::size_t>();
  p.smoothing = j.at("smoothing").get<double>();
  return p;
}

json svm_json(const SvmModel& m) {
  json sv = json::array();
  for (const auto& v : m.support_vectors) sv.push_back(v);
  return json{{"bias", m.bias}, {"multipliers", m.multipliers}, {"labels", m.labels}, {"support_vectors", sv},
              {"iterations", m.iterations}, {"converged", m.converged}};
}

SvmModel svm_from_json(const json& j, const ClassifierParams& p) {
  SvmModel m;
  m.kernel = Kernel{p.kernel, p.gamma};
  m.penalty = p.penalty;
  m.bias = j.at("bias").get<double>();
  m.multipliers = j.at("multipliers").get<std::vector<double>>();
  m.labels = j.at("labels").get<std::vector<int>>();
  m.support_vectors = j.at("support_vectors").get<std::vector<FeatureVector>>();
  m.iterations = j.at("iterations").get<std::size_t>();
  m.converged = j.at("converged").get<bool>();
  return m;
}

SvmOptions svm_options(const ClassifierParams& p) {
  return SvmOptions{p.penalty, Kernel{p.kernel, p.gamma}, p.tolerance, p.max_iterations};
}

class SvmClassifier final : public Classifier {
 public:
  explicit SvmClassifier(ClassifierParams p) : Classifier(p) {}
  Algorithm algorithm() const override { return Algorithm::svm; }

  void train(const LabeledDataset& data) override {
    begin_training(data);
    ensemble_ = {};
    binary_.reset();
    if (constant_) return;
    if (data.class_count() == 2) {
      std::vector<FeatureVector> xs;
      std::vector<int> ys;
      for (const auto& s : data.samples()) {
        xs.push_back(s.x);
        ys.push_back(s.label == 1 ? 1 : -1);
      }
      binary_ = svm_train(xs, ys, svm_options(params_));
    } else {
      ensemble_ = svm_train_one_vs_rest(data, svm_options(params_));
    }
  }

  std::vector<double> scores(std::span<const double> x) const override {
    check_input(x);
    if (constant_) return constant_scores();
    if (binary_) {
      const double f = binary_->decision(x);
      return {-f, f};
    }
    return ensemble_.decision_values(x);
  }

  std::string serialize() const override {
    json body;
    if (binary_) {
      body["binary"] = svm_json(*binary_);
    } else {
      json members = json::array();
      for (const auto& m : ensemble_.members) members.push_back(m ? svm_json(*m) : json(nullptr));
      body["one_vs_rest"] = members;
    }
    return body.dump();
  }

  void restore(const json& body) {
    if (body.contains("binary")) {
      binary_ = svm_from_json(body.at("binary"), params_);
    } else if (body.contains("one_vs_rest")) {
      for (const auto& m : body.at("one_vs_rest")) {
        ensemble_.members.push_back(m.is_null() ? std::nullopt : std::optional<SvmModel>(svm_from_json(m, params_)));
      }
    }
  }

  std::vector<double> constant_scores() const {
    std::vector<double> s(classes_.size(), 0.0);
    s[constant_class_] = 1.0;
    return s;
  }

 private:
  std::optional<SvmModel> binary_;
  OneVsRestSvm ensemble_;
};

class KnnClassifier final : public Classifier {
 public:
  explicit KnnClassifier(ClassifierParams p) : Classifier(p) {}
  Algorithm algorithm() const override { return Algorithm::knn; }

  void train(const LabeledDataset& data) override {
    begin_training(data);
    memory_ = data;
  }

  std::vector<double> scores(std::span<const double> x) const override {
    check_input(x);
    return knn_votes(memory_, x, effective_k());
  }

  std::size_t predict(std::span<const double> x) const override {
    check_input(x);
    return knn_predict(memory_, x, effective_k());
  }

  std::string serialize() const override {
    json samples = json::array();
    for (const auto& s : memory_.samples()) samples.push_back(json{{"id", s.id}, {"label", s.label}, {"x", s.x}});
    return json{{"samples", samples}}.dump();
  }

  void restore(const json& body) {
    memory_ = LabeledDataset(classes_, dimension_);
    for (const auto& s : body.at("samples")) {
      memory_.add(s.at("x").get<FeatureVector>(), s.at("label").get<std::size_t>(), s.at("id").get<std::string>());
    }
  }

 private:
  std::size_t effective_k() const { return std::min(params_.k, memory_.size()); }
  LabeledDataset memory_;
};

class NbClassifier final : public Classifier {
 public:
  explicit NbClassifier(ClassifierParams p) : Classifier(p) {}
  Algorithm algorithm() const override { return Algorithm::naive_bayes; }

  void train(const LabeledDataset& data) override {
    begin_training(data);
    model_ = nb_train(data, params_.smoothing);
  }

  std::vector<double> scores(std::span<const double> x) const override {
    check_input(x);
    return model_.log_joint(x);
  }

  std::string serialize() const override {
    return json{{"smoothing", model_.smoothing}, {"priors", model_.priors}, {"conditionals", model_.conditionals}}.dump();
  }

  void restore(const json& body) {
    model_.smoothing = body.at("smoothing").get<double>();
    model_.priors = body.at("priors").get<std::vector<double>>();
    model_.conditionals = body.at("conditionals").get<std::vector<std::vector<double>>>();
  }

 private:
  NbModel model_;
};

class TreeClassifier final : public Classifier {
 public:
  explicit TreeClassifier(ClassifierParams p) : Classifier(p) {}
  Algorithm algorithm() const override { return Algorithm::decision_tree; }

  void train(const LabeledDataset& data) override {
    begin_training(data);
    tree_ = dt_train(data);
  }

  std::vector<double> scores(std::span<const double> x) const override {
    check_input(x);
    std::vector<double> s(classes_.size(), 0.0);
    s[tree_.predict(x)] = 1.0;
    return s;
  }

  std::string serialize() const override {
    json nodes = json::array();
    for (const auto& n : tree_.nodes) {
      nodes.push_back(json{{"leaf", n.leaf}, {"label", n.label}, {"feature", n.feature}, {"threshold", n.threshold},
                           {"left", n.left}, {"right", n.right}, {"samples", n.samples}});
    }
    return json{{"nodes", nodes}}.dump();
  }

  void restore(const json& body) {
    for (const auto& n : body.at("nodes")) {
      TreeNode node;
      node.leaf = n.at("leaf").get<bool>();
      node.label = n.at("label").get<std::size_t>();
      node.feature = n.at("feature").get<std::size_t>();
      node.threshold = n.at("threshold").get<double>();
      node.left = n.at("left").get<std::size_t>();
      node.right = n.at("right").get<std::size_t>();
      node.samples = n.at("samples").get<std::size_t>();
      tree_.nodes.push_back(node);
    }
  }

 private:
  DecisionTree tree_;
};

json fisher_json(const FisherModel& m) {
  // Covariances are training intermediates (dimension^2 each) and are not persisted.
  return json{{"mean0", m.mean0},         {"mean1", m.mean1},       {"projection", m.projection},
              {"threshold", m.threshold}, {"singular", m.singular}, {"degenerate", m.degenerate}};
}

FisherModel fisher_from_json(const json& j, std::size_t dimension) {
  FisherModel m;
  m.dimension = dimension;
  m.mean0 = j.at("mean0").get<std::vector<double>>();
  m.mean1 = j.at("mean1").get<std::vector<double>>();
  m.projection = j.at("projection").get<std::vector<double>>();
  m.threshold = j.at("threshold").get<double>();
  m.singular = j.at("singular").get<bool>();
  m.degenerate = j.at("degenerate").get<bool>();
  return m;
}

class LdaClassifier final : public Classifier {
 public:
  explicit LdaClassifier(ClassifierParams p) : Classifier(p) {}
  Algorithm algorithm() const override { return Algorithm::lda; }

  void train(const LabeledDataset& data) override {
    begin_training(data);
    ensemble_ = {};
    if (constant_) return;
    if (data.class_count() == 2) {
      ensemble_.members = {fisher_train(data, 1)};
      ensemble_.present = {true};
      binary_ = true;
    } else {
      ensemble_ = fisher_train_one_vs_rest(data);
      binary_ = false;
    }
  }

  std::vector<double> scores(std::span<const double> x) const override {
    check_input(x);
    if (constant_) {
      std::vector<double> s(classes_.size(), 0.0);
      s[constant_class_] = 1.0;
      return s;
    }
    if (binary_) {
      const auto& m = ensemble_.members.front();
      const double margin = m.project(x) - m.threshold;
      return {-margin, margin};
    }
    return ensemble_.scores(x);
  }

  std::string serialize() const override {
    json members = json::array();
    for (std::size_t c = 0; c < ensemble_.members.size(); ++c) {
      members.push_back(ensemble_.present[c] ? fisher_json(ensemble_.members[c]) : json(nullptr));
    }
    return json{{"binary", binary_}, {"members", members}}.dump();
  }

  void restore(const json& body) {
    binary_ = body.at("binary").get<bool>();
    for (const auto& m : body.at("members")) {
      ensemble_.present.push_back(!m.is_null());
      ensemble_.members.push_back(m.is_null() ? FisherModel{} : fisher_from_json(m, dimension_));
    }
  }

 private:
  OneVsRestFisher ensemble_;
  bool binary_ = false;
};

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::svm: return "svm";
    case Algorithm::knn: return "knn";
    case Algorithm::naive_bayes: return "naive_bayes";
    case Algorithm::decision_tree: return "decision_tree";
    case Algorithm::lda: return "lda";
  }
  return "svm";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "svm") return Algorithm::svm;
  if (name == "knn") return Algorithm::knn;
  if (name == "naive_bayes" || name == "nb") return Algorithm::naive_bayes;
  if (name == "decision_tree" || name == "dt") return Algorithm::decision_tree;
  if (name == "lda" || name == "fisher") return Algorithm::lda;
  throw std::invalid_argument("unknown classifier algorithm '" + std::string(name) + "'");
}

std::string_view to_string(KernelType k) {
  switch (k) {
    case KernelType::erbf: return "erbf";
    case KernelType::rbf: return "rbf";
    case KernelType::linear: return "linear";
  }
  return "erbf";
}

KernelType parse_kernel(std::string_view name) {
  if (name == "erbf") return KernelType::erbf;
  if (name == "rbf") return KernelType::rbf;
  if (name == "linear") return KernelType::linear;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::size_t Classifier::predict(std::span<const double> x) const { return argmax_lowest(scores(x)); }

void Classifier::require_trained() const {
  if (!trained_) throw ModelError(std::string(to_string(algorithm())) + " classifier used before training");
}

void Classifier::check_input(std::span<const double> x) const {
  require_trained();
  if (x.size() != dimension_) {
    throw std::invalid_argument("classifier input has dimension " + std::to_string(x.size()) + ", model expects " +
                                std::to_string(dimension_));
  }
}

void Classifier::begin_training(const LabeledDataset& data) {
  if (data.empty()) throw std::invalid_argument(std::string(to_string(algorithm())) + ": empty training set");
  if (data.class_count() < 2) throw std::invalid_argument("classifier needs at least two classes");
  classes_ = data.classes();
  dimension_ = data.dimension();
  constant_ = data.populated_classes() < 2;
  if (constant_) {
    const auto counts = data.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c]) constant_class_ = c;
    }
  }
  trained_ = true;
}

void Classifier::save(std::ostream& out) const {
  require_trained();
  json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelVersion;
  doc["algorithm"] = std::string(to_string(algorithm()));
  doc["classes"] = classes_;
  doc["dimension"] = dimension_;
  doc["params"] = params_json(params_);
  doc["constant_class"] = constant_ ? json(constant_class_) : json(nullptr);
  doc["model"] = json::parse(serialize());
  out << doc.dump(1) << '\n';
}

void Classifier::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file '" + path.string() + "'");
  save(out);
}

std::unique_ptr<Classifier> Classifier::load(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

std::unique_ptr<Classifier> Classifier::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file '" + path.string() + "'");
  return load(in);
}

std::unique_ptr<Classifier> Classifier::deserialize(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", "") != kModelFormat) throw ModelError("not a cliniqa model file");
    if (doc.value("version", 0) != kModelVersion) throw ModelError("unsupported model version");
    const auto algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
    auto model = make_classifier(algorithm, params_from_json(doc.at("params")));
    model->classes_ = doc.at("classes").get<std::vector<std::string>>();
    model->dimension_ = doc.at("dimension").get<std::size_t>();
    if (!doc.at("constant_class").is_null()) {
      model->constant_ = true;
      model->constant_class_ = doc.at("constant_class").get<std::size_t>();
    }
    const auto& body = doc.at("model");
    switch (algorithm) {
      case Algorithm::svm: static_cast<SvmClassifier&>(*model).restore(body); break;
      case Algorithm::knn: static_cast<KnnClassifier&>(*model).restore(body); break;
      case Algorithm::naive_bayes: static_cast<NbClassifier&>(*model).restore(body); break;
      case Algorithm::decision_tree: static_cast<TreeClassifier&>(*model).restore(body); break;
      case Algorithm::lda: static_cast<LdaClassifier&>(*model).restore(body); break;
    }
    model->trained_ = true;
    return model;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
}

std::unique_ptr<Classifier> make_classifier(Algorithm algorithm, const ClassifierParams& params) {
  switch (algorithm) {
    case Algorithm::svm: return std::make_unique<SvmClassifier>(params);
    case Algorithm::knn: return std::make_unique<KnnClassifier>(params);
    case Algorithm::naive_bayes: return std::make_unique<NbClassifier>(params);
    case Algorithm::decision_tree: return std::make_unique<TreeClassifier>(params);
    case Algorithm::lda: return std::make_unique<LdaClassifier>(params);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace cliniqa
