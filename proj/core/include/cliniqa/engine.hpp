#pragma once

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliniqa/config.hpp"
#include "cliniqa/conceptmap.hpp"
#include "cliniqa/corpus.hpp"
#include "cliniqa/cross_validation.hpp"
#include "cliniqa/docclass.hpp"
#include "cliniqa/evalkit.hpp"
#include "cliniqa/index.hpp"
#include "cliniqa/question.hpp"
#include "cliniqa/ranking.hpp"
#include "cliniqa/retrieval.hpp"

namespace cliniqa {

struct IndexBuildSummary {
  std::size_t documents = 0;
  std::size_t phrases = 0;
  std::size_t tags = 0;
};

/// Maps the corpus, builds the index and writes it to config.index.
IndexBuildSummary build_index_file(const PipelineConfig& config);

struct StageSummary {
  std::string name;
  StageSpec spec;
  std::size_t samples = 0;
  std::size_t dimension = 0;
  std::optional<CvReport> cv;
};

struct TrainSummary {
  std::vector<StageSummary> stages;
};

/// Trains the document, gate and focus models and writes them to
/// config.models. Needs the persisted index (ServiceError otherwise).
/// With `cross_validate` set each stage also gets a seeded k-fold estimate.
TrainSummary train_models(const PipelineConfig& config, bool cross_validate = false);

struct AnswerResponse {
  std::string question;
  bool answerable = false;
  double gate_score = 0.0;
  std::string reason;
  std::optional<FocusClass> focus;
  std::vector<std::string> query_phrases;
  std::vector<std::string> query_tags;
  bool retrieval_fallback = false;  // union used because no document matched both vectors
  bool evidence_fallback = false;   // no evidence documents; full corpus searched
  bool undefined_terms = false;     // question had no terms for line scores
  RankedAnswer ranked;
};

/// Stable JSON rendering shared by the CLI and the HTTP service.
std::string to_json(const AnswerResponse& response);

/// Loaded corpus, lexicon, index and models; answers questions. Immutable
/// after open apart from the instrumentation counters.
class Engine {
 public:
  /// Throws ServiceError with a remediation hint when the index or a model is missing.
  static std::shared_ptr<const Engine> open(const PipelineConfig& config);

  AnswerResponse ask(std::string_view question, std::optional<std::size_t> top_k = std::nullopt) const;

  const AbstractDoc* find_doc(std::string_view doc_id) const;
  const PipelineConfig& config() const { return config_; }
  const std::vector<AbstractDoc>& corpus() const { return corpus_; }
  const Lexicon& lexicon() const { return lexicon_; }
  const DocumentIndex& index() const { return index_; }
  const DocumentIndex& evidence_index() const { return evidence_index_; }
  const EvidenceSelection& evidence() const { return evidence_; }

  std::size_t questions_asked() const { return asked_.load(); }
  std::size_t retrievals() const { return retrievals_.load(); }
  std::size_t refusals() const { return refusals_.load(); }

 private:
  Engine() = default;

  PipelineConfig config_;
  std::vector<AbstractDoc> corpus_;
  std::map<std::string, std::size_t, std::less<>> position_;
  Lexicon lexicon_;
  DocumentIndex index_;
  DocumentIndex evidence_index_;
  EvidenceSelection evidence_;
  std::optional<DocumentClassifier> doc_classifier_;
  QuestionModel gate_;
  QuestionModel focus_;
  mutable std::atomic<std::size_t> asked_{0};
  mutable std::atomic<std::size_t> retrievals_{0};
  mutable std::atomic<std::size_t> refusals_{0};
};

/// Asks every gold question and scores the gold answers.
EvalReport evaluate(const Engine& engine, std::span<const GoldAnswer> gold, std::span<const std::size_t> cutoffs);

}  // namespace cliniqa
