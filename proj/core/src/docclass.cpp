#include "cliniqa/docclass.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cliniqa/errors.hpp"

namespace cliniqa {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kDocModelFormat = "cliniqa-doc-classifier";

std::size_t index_row(const DocumentIndex& index, const std::string& doc_id) {
  const auto row = index.row_of(doc_id);
  if (!row) throw DataError("document '" + doc_id + "' is not in the index");
  return *row;
}

}  // namespace

std::vector<std::string> doc_class_names() {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < kDocClassCount; ++c) out.emplace_back(to_string(static_cast<DocClass>(c)));
  return out;
}

FeatureSpace::FeatureSpace(std::vector<std::string> phrases, std::vector<std::string> tags, FeatureSet set)
    : phrases_(std::move(phrases)), tags_(std::move(tags)), set_(set) {}

FeatureSpace FeatureSpace::of_index(const DocumentIndex& index, FeatureSet set) {
  return FeatureSpace(index.vocabulary(FeatureSet::phrases), index.vocabulary(FeatureSet::tags), set);
}

std::size_t FeatureSpace::dimension() const {
  switch (set_) {
    case FeatureSet::phrases: return phrases_.size();
    case FeatureSet::tags: return tags_.size();
    case FeatureSet::combined: return phrases_.size() + tags_.size();
  }
  return 0;
}

FeatureVector FeatureSpace::project(const TermCounts& counts) const {
  FeatureVector out;
  out.reserve(dimension());
  auto append = [&](const std::vector<std::string>& columns, const std::map<std::string, std::size_t>& source) {
    for (const auto& term : columns) {
      const auto it = source.find(term);
      out.push_back(it == source.end() ? 0.0 : static_cast<double>(it->second));
    }
  };
  if (set_ != FeatureSet::tags) append(phrases_, counts.phrases);
  if (set_ != FeatureSet::phrases) append(tags_, counts.tags);
  return out;
}

DocFeatureVector doc_features(const DocumentIndex& index, std::size_t row, FeatureSet set) {
  const auto space = FeatureSpace::of_index(index, set);
  return DocFeatureVector{index.doc_ids().at(row), space.project(index.counts(row))};
}

DocFeatureVector doc_features(const DocumentIndex& index, std::string_view doc_id, std::string_view feature_set) {
  const auto set = parse_feature_set(feature_set);
  const auto row = index.row_of(doc_id);
  if (!row) throw std::invalid_argument("unknown document '" + std::string(doc_id) + "'");
  return doc_features(index, *row, set);
}

LabeledDataset document_dataset(std::span<const AbstractDoc> corpus, const DocumentIndex& index,
                                const FeatureSpace& space) {
  LabeledDataset data(doc_class_names(), space.dimension());
  for (const auto& doc : corpus) {
    if (!doc.label) continue;
    data.add(space.project(index.counts(index_row(index, doc.doc_id))), static_cast<std::size_t>(*doc.label),
             doc.doc_id);
  }
  return data;
}

DocumentClassifier DocumentClassifier::train(std::span<const AbstractDoc> corpus, const DocumentIndex& index,
                                             const StageSpec& spec) {
  DocumentClassifier out;
  out.space_ = FeatureSpace::of_index(index, spec.features);
  const auto data = document_dataset(corpus, index, out.space_);
  if (data.size() < 2) throw DataError("document classifier needs at least two labeled documents");
  auto model = make_classifier(spec.algorithm, spec.params);
  model->train(data);
  out.model_ = std::move(model);
  return out;
}

const Classifier& DocumentClassifier::model() const {
  if (!model_) throw ModelError("document classifier used before training");
  return *model_;
}

DocClass DocumentClassifier::classify(const TermCounts& counts) const {
  const auto features = space_.project(counts);
  return static_cast<DocClass>(model().predict(features));
}

DocClass DocumentClassifier::classify(const AbstractDoc& doc, const Lexicon& lexicon) const {
  return classify(term_frequency(map_document(doc, lexicon)));
}

std::string DocumentClassifier::serialize() const {
  std::ostringstream model_text;
  model().save(model_text);
  json doc;
  doc["format"] = kDocModelFormat;
  doc["version"] = 1;
  doc["feature_set"] = std::string(to_string(space_.feature_set()));
  doc["phrases"] = space_.phrases();
  doc["tags"] = space_.tags();
  doc["model"] = json::parse(model_text.str());
  return doc.dump(1);
}

DocumentClassifier DocumentClassifier::deserialize(std::string_view json_text) {
  try {
    const auto doc = json::parse(json_text);
    if (doc.value("format", "") != kDocModelFormat) throw ModelError("not a document classifier file");
    DocumentClassifier out;
    out.space_ = FeatureSpace(doc.at("phrases").get<std::vector<std::string>>(),
                              doc.at("tags").get<std::vector<std::string>>(),
                              parse_feature_set(doc.at("feature_set").get<std::string>()));
    out.model_ = Classifier::deserialize(doc.at("model").dump());
    if (out.model_->dimension() != out.space_.dimension()) {
      throw ModelError("document classifier vocabulary does not match its model dimension");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed document classifier: ") + e.what());
  }
}

void DocumentClassifier::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << serialize() << '\n';
}

DocumentClassifier DocumentClassifier::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open document classifier '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

EvidenceSelection filter_evidence(std::span<const AbstractDoc> corpus, const DocumentIndex& index,
                                  const DocumentClassifier* classifier, bool gold_override) {
  EvidenceSelection out;
  out.assigned.reserve(corpus.size());
  out.predicted.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& doc = corpus[i];
    DocClass predicted;
    if (classifier) {
      predicted = classifier->classify(index.counts(index_row(index, doc.doc_id)));
    } else if (doc.label) {
      predicted = *doc.label;
    } else {
      throw DataError("document '" + doc.doc_id + "' has no gold label and no classifier was given");
    }
    const DocClass assigned = (gold_override && doc.label) ? *doc.label : predicted;
    out.predicted.push_back(predicted);
    out.assigned.push_back(assigned);
    if (is_evidence(assigned)) out.rows.push_back(i);
  }
  if (out.rows.empty()) {
    out.fallback = true;
    out.warnings.push_back("no evidence-based documents found; retrieval uses the full corpus");
    for (std::size_t i = 0; i < corpus.size(); ++i) out.rows.push_back(i);
  }
  return out;
}

}  // namespace cliniqa
