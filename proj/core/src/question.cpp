#include "cliniqa/question.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cliniqa/errors.hpp"
#include "numeric_format.hpp"

namespace cliniqa {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kQuestionModelFormat = "cliniqa-question-model";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool is_zero(const FeatureVector& x) {
  for (double v : x) {
    if (v != 0.0) return false;
  }
  return true;
}

}  // namespace

FocusClass focus_class(int number) {
  switch (number) {
    case 1: return {1, {"Clinical Drug", "Pharmacologic Substance"}};
    case 2: return {2, {"Laboratory or Test Result", "Sign or Symptom"}};
    case 3: return {3, {"Therapeutic or Preventive Procedure", "Diagnostic Procedure"}};
    case 4: return {4, {"Qualitative Concept"}};
    default: break;
  }
  throw std::invalid_argument("question class must be 1..4, got " + std::to_string(number));
}

std::vector<QuestionRecord> parse_questions(std::istream& in, std::string_view source_name) {
  std::vector<QuestionRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string where = std::string(source_name) + ":" + std::to_string(line_no);
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError(where + ": expected 3 tab-separated fields, found " + std::to_string(fields.size()));
    }
    QuestionRecord q;
    q.text = fields[0];
    if (q.text.empty()) throw ParseError(where + ": empty question text");
    if (fields[1] == "1") {
      q.answerable = true;
    } else if (fields[1] != "0") {
      throw ParseError(where + ": answerable flag must be 0 or 1, got '" + fields[1] + "'");
    }
    if (fields[2] != "-") {
      const auto n = detail::parse_integer<int>(fields[2]);
      if (!n || *n < 1 || *n > kFocusClassCount) {
        throw ParseError(where + ": question class must be 1..4 or '-', got '" + fields[2] + "'");
      }
      q.focus = *n;
    }
    if (q.answerable && !q.focus) throw ParseError(where + ": answerable question without a class");
    if (!q.answerable && q.focus) throw ParseError(where + ": unanswerable question with a class");
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<QuestionRecord> parse_questions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open question file '" + path.string() + "'");
  return parse_questions(in, path.string());
}

FeatureSpace question_vocabulary(std::span<const QuestionRecord> questions, const Lexicon& lexicon, FeatureSet set) {
  std::set<std::string> phrases;
  std::set<std::string> tags;
  for (const auto& q : questions) {
    const auto mapping = map_text(q.text, lexicon);
    for (const auto& [phrase, n] : mapping.phrases) phrases.insert(phrase);
    for (const auto& [tag, n] : mapping.tags) tags.insert(tag);
  }
  return FeatureSpace({phrases.begin(), phrases.end()}, {tags.begin(), tags.end()}, set);
}

FeatureVector question_features(const ConceptMapping& mapping, const FeatureSpace& vocabulary) {
  auto x = vocabulary.project(term_frequency(mapping));
  for (auto& v : x) v = v > 0.0 ? 1.0 : 0.0;
  return x;
}

FeatureVector question_features(std::string_view question, const Lexicon& lexicon, const FeatureSpace& vocabulary) {
  return question_features(map_text(question, lexicon), vocabulary);
}

LabeledDataset gate_dataset(std::span<const QuestionRecord> questions, const Lexicon& lexicon,
                            const FeatureSpace& vocabulary) {
  LabeledDataset data({"unanswerable", "answerable"}, vocabulary.dimension());
  for (const auto& q : questions) {
    data.add(question_features(q.text, lexicon, vocabulary), q.answerable ? 1 : 0, q.text);
  }
  return data;
}

LabeledDataset focus_dataset(std::span<const QuestionRecord> questions, const Lexicon& lexicon,
                             const FeatureSpace& vocabulary) {
  LabeledDataset data({"1", "2", "3", "4"}, vocabulary.dimension());
  for (const auto& q : questions) {
    if (!q.answerable || !q.focus) continue;
    data.add(question_features(q.text, lexicon, vocabulary), static_cast<std::size_t>(*q.focus - 1), q.text);
  }
  return data;
}

QuestionModel::QuestionModel(FeatureSpace vocabulary, std::shared_ptr<const Classifier> model)
    : vocabulary_(std::move(vocabulary)), model_(std::move(model)) {
  if (model_ && model_->dimension() != vocabulary_.dimension()) {
    throw ModelError("question model dimension does not match its vocabulary");
  }
}

const Classifier& QuestionModel::model() const {
  if (!model_) throw ModelError("question model used before training");
  return *model_;
}

std::string QuestionModel::serialize() const {
  std::ostringstream model_text;
  model().save(model_text);
  json doc;
  doc["format"] = kQuestionModelFormat;
  doc["version"] = 1;
  doc["feature_set"] = std::string(to_string(vocabulary_.feature_set()));
  doc["phrases"] = vocabulary_.phrases();
  doc["tags"] = vocabulary_.tags();
  doc["model"] = json::parse(model_text.str());
  return doc.dump(1);
}

QuestionModel QuestionModel::deserialize(std::string_view json_text) {
  try {
    const auto doc = json::parse(json_text);
    if (doc.value("format", "") != kQuestionModelFormat) throw ModelError("not a question model file");
    FeatureSpace vocabulary(doc.at("phrases").get<std::vector<std::string>>(),
                            doc.at("tags").get<std::vector<std::string>>(),
                            parse_feature_set(doc.at("feature_set").get<std::string>()));
    return QuestionModel(std::move(vocabulary), Classifier::deserialize(doc.at("model").dump()));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed question model: ") + e.what());
  }
}

void QuestionModel::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << serialize() << '\n';
}

QuestionModel QuestionModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open question model '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

QuestionModel train_gate(std::span<const QuestionRecord> questions, const Lexicon& lexicon, const StageSpec& spec) {
  auto vocabulary = question_vocabulary(questions, lexicon, spec.features);
  const auto data = gate_dataset(questions, lexicon, vocabulary);
  if (data.empty()) throw DataError("answerable gate needs training questions");
  auto model = make_classifier(spec.algorithm, spec.params);
  model->train(data);
  return QuestionModel(std::move(vocabulary), std::move(model));
}

QuestionModel train_focus(std::span<const QuestionRecord> questions, const Lexicon& lexicon, const StageSpec& spec) {
  auto vocabulary = question_vocabulary(questions, lexicon, spec.features);
  const auto data = focus_dataset(questions, lexicon, vocabulary);
  if (data.empty()) throw DataError("focus classifier needs answerable training questions");
  auto model = make_classifier(spec.algorithm, spec.params);
  model->train(data);
  return QuestionModel(std::move(vocabulary), std::move(model));
}

GateDecision is_answerable(const ConceptMapping& question, const QuestionModel& gate) {
  const auto& model = gate.model();
  const auto x = question_features(question, gate.vocabulary());
  GateDecision out;
  if (is_zero(x)) {
    out.reason = "the question contains no known medical phrase or semantic type";
    return out;
  }
  const auto scores = model.scores(x);
  out.score = scores.at(1) - scores.at(0);
  out.answerable = model.predict(x) == 1;
  if (!out.answerable) out.reason = "the question was classified as not answerable from the literature";
  return out;
}

FocusClass classify_focus(const ConceptMapping& question, const QuestionModel& focus) {
  const auto& model = focus.model();
  const auto x = question_features(question, focus.vocabulary());
  return focus_class(static_cast<int>(model.predict(x)) + 1);
}

}  // namespace cliniqa
