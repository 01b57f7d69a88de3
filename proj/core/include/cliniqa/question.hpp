#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/conceptmap.hpp"
#include "cliniqa/dataset.hpp"
#include "cliniqa/docclass.hpp"
#include "cliniqa/stage.hpp"

namespace cliniqa {

/// Question class and the semantic tags its answer sentence must carry.
struct FocusClass {
  int number = 0;  // 1..4
  std::vector<std::string> tags;
};

inline constexpr int kFocusClassCount = 4;

/// Fixed class -> focus tag table. Throws std::invalid_argument outside 1..4.
FocusClass focus_class(int number);

struct QuestionRecord {
  std::string text;
  bool answerable = false;
  std::optional<int> focus;  // present for answerable questions
};

/// Tab-separated `question_text \t answerable(0/1) \t class(1..4|-)`; `#` comments.
std::vector<QuestionRecord> parse_questions(std::istream& in, std::string_view source_name = "<stream>");
std::vector<QuestionRecord> parse_questions(const std::filesystem::path& path);

/// Feature vocabulary built from the phrases and tags of the training questions.
FeatureSpace question_vocabulary(std::span<const QuestionRecord> questions, const Lexicon& lexicon, FeatureSet set);

/// Presence bits over the vocabulary: 1 iff the term occurs in the mapping.
FeatureVector question_features(const ConceptMapping& mapping, const FeatureSpace& vocabulary);
FeatureVector question_features(std::string_view question, const Lexicon& lexicon, const FeatureSpace& vocabulary);

/// Gate class order: index 0 = unanswerable, 1 = answerable.
LabeledDataset gate_dataset(std::span<const QuestionRecord> questions, const Lexicon& lexicon,
                            const FeatureSpace& vocabulary);
/// Answerable questions only, labeled "1".."4".
LabeledDataset focus_dataset(std::span<const QuestionRecord> questions, const Lexicon& lexicon,
                             const FeatureSpace& vocabulary);

struct GateDecision {
  bool answerable = false;
  double score = 0.0;  // answerable score minus unanswerable score
  std::string reason;  // set when refused
};

/// A trained binary or multiclass model over a question vocabulary.
class QuestionModel {
 public:
  QuestionModel() = default;
  QuestionModel(FeatureSpace vocabulary, std::shared_ptr<const Classifier> model);

  bool trained() const { return model_ != nullptr; }
  const FeatureSpace& vocabulary() const { return vocabulary_; }
  const Classifier& model() const;

  std::string serialize() const;
  static QuestionModel deserialize(std::string_view json_text);
  void save(const std::filesystem::path& path) const;
  static QuestionModel load(const std::filesystem::path& path);

 private:
  FeatureSpace vocabulary_;
  std::shared_ptr<const Classifier> model_;
};

QuestionModel train_gate(std::span<const QuestionRecord> questions, const Lexicon& lexicon, const StageSpec& spec);
QuestionModel train_focus(std::span<const QuestionRecord> questions, const Lexicon& lexicon, const StageSpec& spec);

/// A question without any vocabulary term is never answerable. Throws
/// ModelError for an untrained gate.
GateDecision is_answerable(const ConceptMapping& question, const QuestionModel& gate);
FocusClass classify_focus(const ConceptMapping& question, const QuestionModel& focus);

}  // namespace cliniqa
