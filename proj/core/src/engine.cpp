#include "cliniqa/engine.hpp"

#include <filesystem>

#include <json.hpp>

#include "cliniqa/errors.hpp"

namespace cliniqa {

namespace {

using json = nlohmann::ordered_json;

DocumentIndex load_index_or_hint(const PipelineConfig& config) {
  if (!std::filesystem::exists(config.index)) {
    throw ServiceError("index not found at " + config.index.string() + "; run `cliniqa index --config <file>` first");
  }
  return DocumentIndex::load(config.index);
}

void require_model(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw ServiceError("model not found at " + path.string() + "; run `cliniqa train --config <file>` first");
  }
}

StageSummary summarize_stage(std::string name, const StageSpec& spec, const LabeledDataset& data,
                             const PipelineConfig& config, bool cv) {
  StageSummary s{std::move(name), spec, data.size(), data.dimension(), std::nullopt};
  if (cv) {
    const std::size_t folds = std::min(config.cv_folds, data.size());
    if (folds >= 2) s.cv = cross_validate(spec.algorithm, spec.params, data, folds, config.seed);
  }
  return s;
}

}  // namespace

IndexBuildSummary build_index_file(const PipelineConfig& config) {
  require_inputs(config);
  const auto corpus = parse_corpus(config.corpus);
  const auto lexicon = Lexicon::load(config.lexicon);
  const auto index = build_index(corpus, lexicon, IndexOptions{config.log_base});
  index.save(config.index);
  return IndexBuildSummary{index.document_count(), index.vocabulary(FeatureSet::phrases).size(),
                           index.vocabulary(FeatureSet::tags).size()};
}

TrainSummary train_models(const PipelineConfig& config, bool cross_validate) {
  require_inputs(config);
  const auto corpus = parse_corpus(config.corpus);
  const auto lexicon = Lexicon::load(config.lexicon);
  const auto questions = parse_questions(config.questions);
  const auto index = load_index_or_hint(config);
  if (index.doc_ids().size() != corpus.size()) {
    throw ServiceError("index at " + config.index.string() + " does not match the corpus; rerun `cliniqa index`");
  }

  TrainSummary summary;
  std::filesystem::create_directories(config.models);

  if (config.classify_documents) {
    const auto space = FeatureSpace::of_index(index, config.doc_stage.features);
    const auto data = document_dataset(corpus, index, space);
    auto doc_model = DocumentClassifier::train(corpus, index, config.doc_stage);
    doc_model.save(config.doc_model_path());
    summary.stages.push_back(summarize_stage("doc", config.doc_stage, data, config, cross_validate));
  } else {
    std::filesystem::remove(config.doc_model_path());
  }

  const auto gate = train_gate(questions, lexicon, config.gate_stage);
  gate.save(config.gate_model_path());
  summary.stages.push_back(summarize_stage(
      "answerable", config.gate_stage, gate_dataset(questions, lexicon, gate.vocabulary()), config, cross_validate));

  const auto focus = train_focus(questions, lexicon, config.focus_stage);
  focus.save(config.focus_model_path());
  summary.stages.push_back(summarize_stage(
      "focus", config.focus_stage, focus_dataset(questions, lexicon, focus.vocabulary()), config, cross_validate));
  return summary;
}

std::shared_ptr<const Engine> Engine::open(const PipelineConfig& config) {
  require_inputs(config);
  std::shared_ptr<Engine> engine(new Engine());
  engine->config_ = config;
  engine->corpus_ = parse_corpus(config.corpus);
  for (std::size_t i = 0; i < engine->corpus_.size(); ++i) engine->position_.emplace(engine->corpus_[i].doc_id, i);
  engine->lexicon_ = Lexicon::load(config.lexicon);
  engine->index_ = load_index_or_hint(config);
  if (engine->index_.doc_ids().size() != engine->corpus_.size()) {
    throw ServiceError("index at " + config.index.string() + " does not match the corpus; rerun `cliniqa index`");
  }
  for (const auto& id : engine->index_.doc_ids()) {
    if (!engine->position_.count(id)) {
      throw ServiceError("index names unknown document " + id + "; rerun `cliniqa index`");
    }
  }
  if (config.classify_documents) {
    require_model(config.doc_model_path());
    engine->doc_classifier_ = DocumentClassifier::load(config.doc_model_path());
  }
  require_model(config.gate_model_path());
  require_model(config.focus_model_path());
  engine->gate_ = QuestionModel::load(config.gate_model_path());
  engine->focus_ = QuestionModel::load(config.focus_model_path());

  engine->evidence_ = filter_evidence(engine->corpus_, engine->index_,
                                      engine->doc_classifier_ ? &*engine->doc_classifier_ : nullptr,
                                      config.gold_override);
  std::vector<std::size_t> rows;
  for (std::size_t pos : engine->evidence_.rows) rows.push_back(*engine->index_.row_of(engine->corpus_[pos].doc_id));
  engine->evidence_index_ = engine->index_.subset(rows);
  return engine;
}

const AbstractDoc* Engine::find_doc(std::string_view doc_id) const {
  const auto it = position_.find(doc_id);
  return it == position_.end() ? nullptr : &corpus_[it->second];
}

AnswerResponse Engine::ask(std::string_view question, std::optional<std::size_t> top_k) const {
  ++asked_;
  AnswerResponse r;
  r.question = std::string(question);
  r.evidence_fallback = evidence_.fallback;
  const auto mapping = map_text(question, lexicon_);

  const auto gate = is_answerable(mapping, gate_);
  r.answerable = gate.answerable;
  r.gate_score = gate.score;
  if (!gate.answerable) {
    ++refusals_;
    r.reason = gate.reason;
    return r;
  }

  ++retrievals_;
  r.focus = classify_focus(mapping, focus_);
  const auto query = formulate_query(mapping, evidence_index_);
  r.query_phrases = query.matched_phrases;
  r.query_tags = query.matched_tags;

  ExtractOptions options;
  options.top_k = top_k.value_or(config_.top_k);
  if (options.top_k == 0) throw std::invalid_argument("top_k must be at least 1");
  options.phrase_bias = config_.phrase_bias;
  options.tag_bias = config_.tag_bias;
  const auto phrase_scores = score_documents(query.phrases, evidence_index_, FeatureSet::phrases);
  const auto tag_scores = score_documents(query.tags, evidence_index_, FeatureSet::tags);
  const auto candidates = extract_candidates(evidence_index_.doc_ids(), phrase_scores, tag_scores, options);
  r.retrieval_fallback = candidates.fallback;

  std::vector<CandidateAbstract> prepared;
  prepared.reserve(candidates.candidates.size());
  for (const auto& c : candidates.candidates) {
    prepared.push_back(make_candidate(*find_doc(c.doc_id), lexicon_, config_.term_mode, c.combined));
  }
  const auto terms = question_terms(mapping, question, config_.term_mode);
  r.ranked = rank_candidates(prepared, terms, r.focus->tags);
  r.undefined_terms = r.ranked.undefined;
  return r;
}

std::string to_json(const AnswerResponse& r) {
  json doc;
  doc["question"] = r.question;
  doc["answerable"] = r.answerable;
  doc["gate_score"] = r.gate_score;
  if (!r.answerable) {
    doc["reason"] = r.reason;
    doc["abstracts"] = json::array();
    return doc.dump();
  }
  doc["class"] = r.focus ? r.focus->number : 0;
  doc["focus_tags"] = r.focus ? r.focus->tags : std::vector<std::string>{};
  doc["query"] = {{"phrases", r.query_phrases}, {"tags", r.query_tags}};
  doc["retrieval_fallback"] = r.retrieval_fallback;
  doc["evidence_fallback"] = r.evidence_fallback;
  doc["undefined_terms"] = r.undefined_terms;
  json abstracts = json::array();
  for (const auto& a : r.ranked.abstracts) {
    json sentences = json::array();
    for (const auto& s : a.sentences) {
      sentences.push_back(json{{"index", s.index},
                               {"text", s.text},
                               {"flag", s.flag},
                               {"line_score", s.line_score},
                               {"highlighted", s.highlighted}});
    }
    abstracts.push_back(json{{"rank", a.rank},
                             {"doc_id", a.doc_id},
                             {"title", a.title},
                             {"abstract_score", a.abstract_score},
                             {"max_line_score", a.max_line_score},
                             {"best_sentence", a.best_sentence ? json(*a.best_sentence) : json(nullptr)},
                             {"retrieval_score", a.retrieval_score},
                             {"sentences", sentences}});
  }
  doc["abstracts"] = abstracts;
  return doc.dump();
}

EvalReport evaluate(const Engine& engine, std::span<const GoldAnswer> gold, std::span<const std::size_t> cutoffs) {
  validate_gold(gold, engine.corpus());
  std::vector<QuestionOutcome> outcomes;
  for (const auto& g : gold) {
    const auto response = engine.ask(g.question_text);
    QuestionOutcome q;
    q.question_id = g.question_id;
    q.question_text = g.question_text;
    q.gold_doc_id = g.doc_id;
    q.gold_sentence = g.sentence;
    q.answerable = response.answerable;
    std::vector<std::string> ids;
    std::vector<EffortDoc> ranked;
    for (const auto& a : response.ranked.abstracts) {
      ids.push_back(a.doc_id);
      ranked.push_back(effort_doc(*engine.find_doc(a.doc_id)));
      if (a.doc_id == g.doc_id && g.sentence < a.sentences.size()) {
        q.sentence_highlighted = a.sentences[g.sentence].highlighted;
      }
    }
    q.rank = gold_rank(ids, g.doc_id);
    q.effort = user_effort(ranked, g);
    outcomes.push_back(std::move(q));
  }
  return summarize(std::move(outcomes), cutoffs);
}

}  // namespace cliniqa
