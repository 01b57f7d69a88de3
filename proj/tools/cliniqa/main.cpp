#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliniqa/config.hpp"
#include "cliniqa/cross_validation.hpp"
#include "cliniqa/docclass.hpp"
#include "cliniqa/engine.hpp"
#include "cliniqa/errors.hpp"
#include "cliniqa/evalkit.hpp"
#include "cliniqa/http_service.hpp"
#include "cliniqa/question.hpp"

namespace {

using namespace cliniqa;
using ojson = nlohmann::ordered_json;

struct CommonOptions {
  std::string config_path = "cliniqa.json";
  std::string index_path;
  std::string models_path;
};

PipelineConfig load(const CommonOptions& opts) {
  auto config = load_config(opts.config_path);
  if (!opts.index_path.empty()) config.index = opts.index_path;
  if (!opts.models_path.empty()) config.models = opts.models_path;
  return config;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "Pipeline config (JSON)")->capture_default_str();
  cmd->add_option("--index", opts.index_path, "Override the index file path");
  cmd->add_option("--models", opts.models_path, "Override the model directory");
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  file.open(p, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

int run_index(const CommonOptions& opts) {
  const auto config = load(opts);
  const auto summary = build_index_file(config);
  std::cout << "indexed " << summary.documents << " documents (" << summary.phrases << " phrases, " << summary.tags
            << " tags) -> " << config.index.string() << '\n';
  return 0;
}

int run_train(const CommonOptions& opts, bool cv, bool compare, const std::string& export_dir) {
  const auto config = load(opts);
  const auto summary = train_models(config, cv);
  for (const auto& s : summary.stages) {
    std::cout << s.name << ": " << to_string(s.spec.algorithm) << " on " << to_string(s.spec.features) << ", "
              << s.samples << " samples x " << s.dimension << " features";
    if (s.cv) std::cout << ", " << config.cv_folds << "-fold accuracy " << s.cv->accuracy;
    std::cout << '\n';
    if (s.cv) {
      for (const auto& w : s.cv->warnings) std::cerr << "warning: " << s.name << ": " << w << '\n';
    }
  }

  if (!compare && export_dir.empty()) return 0;

  const auto corpus = parse_corpus(config.corpus);
  const auto lexicon = Lexicon::load(config.lexicon);
  const auto questions = parse_questions(config.questions);
  const auto index = DocumentIndex::load(config.index);

  struct StageData {
    std::string name;
    const StageSpec* spec;
    std::function<LabeledDataset(FeatureSet)> make;
  };
  const StageData stages[] = {
      {"doc", &config.doc_stage,
       [&](FeatureSet set) { return document_dataset(corpus, index, FeatureSpace::of_index(index, set)); }},
      {"answerable", &config.gate_stage,
       [&](FeatureSet set) { return gate_dataset(questions, lexicon, question_vocabulary(questions, lexicon, set)); }},
      {"focus", &config.focus_stage,
       [&](FeatureSet set) { return focus_dataset(questions, lexicon, question_vocabulary(questions, lexicon, set)); }},
  };

  if (!export_dir.empty()) {
    std::filesystem::create_directories(export_dir);
    for (const auto& stage : stages) {
      for (auto set : {FeatureSet::phrases, FeatureSet::tags, FeatureSet::combined}) {
        const auto path = std::filesystem::path(export_dir) /
                          (stage.name + "_" + std::string(to_string(set)) + ".svm");
        std::ofstream out(path, std::ios::binary);
        write_sparse_dataset(out, stage.make(set));
      }
    }
    std::cout << "features exported to " << export_dir << '\n';
  }

  if (compare) {
    std::cout << "stage\talgorithm\tfeatures\tdimension\taccuracy\n";
    for (const auto& stage : stages) {
      for (auto set : {FeatureSet::phrases, FeatureSet::tags, FeatureSet::combined}) {
        const auto data = stage.make(set);
        const std::size_t folds = std::min(config.cv_folds, data.size());
        for (auto algorithm : kAllAlgorithms) {
          ClassifierParams params = stage.spec->params;
          const auto report = cross_validate(algorithm, params, data, folds, config.seed);
          std::cout << stage.name << '\t' << to_string(algorithm) << '\t' << to_string(set) << '\t'
                    << data.dimension() << '\t' << report.accuracy << '\n';
        }
      }
    }
  }
  return 0;
}

int run_classify_docs(const CommonOptions& opts, const std::string& out_path) {
  const auto config = load(opts);
  const auto corpus = parse_corpus(config.corpus);
  const auto index = DocumentIndex::load(config.index);
  std::optional<DocumentClassifier> model;
  if (config.classify_documents) {
    if (!std::filesystem::exists(config.doc_model_path())) {
      throw ServiceError("model not found at " + config.doc_model_path().string() +
                         "; run `cliniqa train --config <file>` first");
    }
    model = DocumentClassifier::load(config.doc_model_path());
  }
  const auto selection = filter_evidence(corpus, index, model ? &*model : nullptr, false);
  std::ofstream file;
  auto& out = open_output(out_path, file);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out << corpus[i].doc_id << '\t' << to_string(selection.predicted[i]) << '\t'
        << (corpus[i].label ? std::string(to_string(*corpus[i].label)) : std::string()) << '\n';
  }
  for (const auto& w : selection.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

int run_ask(const CommonOptions& opts, const std::string& question, std::optional<std::size_t> top_k) {
  const auto engine = Engine::open(load(opts));
  std::cout << to_json(engine->ask(question, top_k)) << '\n';
  return 0;
}

int run_eval(const CommonOptions& opts, const std::string& gold_path, const std::string& out_path,
             const std::string& curve_path, std::size_t max_effort, std::size_t step) {
  const auto config = load(opts);
  const std::filesystem::path gold_file = gold_path.empty() ? config.gold : std::filesystem::path(gold_path);
  if (gold_file.empty()) throw std::runtime_error("no gold file: pass --gold or set \"gold\" in the config");
  const auto gold = parse_gold(gold_file);
  const auto engine = Engine::open(config);
  const auto cutoffs = effort_cutoffs(max_effort, step);
  const auto report = evaluate(*engine, gold, cutoffs);
  {
    std::ofstream file;
    write_report(open_output(out_path, file), report);
  }
  if (!curve_path.empty()) {
    std::ofstream file;
    write_curve_tsv(open_output(curve_path, file), report.curve);
  }
  std::cerr << "questions " << report.questions.size() << ", MRR " << report.mrr << ", answered "
            << report.answered_fraction << '\n';
  return 0;
}

int run_serve(const CommonOptions& opts, std::string host, std::optional<int> port) {
  auto config = load(opts);
  if (!host.empty()) config.host = host;
  std::uint16_t p = effective_port(config);
  if (port) p = static_cast<std::uint16_t>(*port);
  Service service(config);
  std::cerr << "serving on http://" << config.host << ':' << p << '\n';
  service.listen(config.host, p);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cliniqa: clinical question answering over medical abstracts"};
  app.require_subcommand(1);

  CommonOptions common;

  auto* index_cmd = app.add_subcommand("index", "Map the corpus and write the index");
  add_common(index_cmd, common);

  bool cv = false;
  bool compare = false;
  std::string export_dir;
  auto* train_cmd = app.add_subcommand("train", "Train document, answerable and focus models");
  add_common(train_cmd, common);
  train_cmd->add_flag("--cv", cv, "Report k-fold accuracy for each configured stage");
  train_cmd->add_flag("--compare", compare, "Cross-validate every algorithm on every feature set");
  train_cmd->add_option("--export-features", export_dir, "Write stage datasets in sparse format to this directory");

  std::string classify_out;
  auto* classify_cmd = app.add_subcommand("classify-docs", "Print doc_id, predicted class and gold class");
  add_common(classify_cmd, common);
  classify_cmd->add_option("-o,--out", classify_out, "Output TSV (default stdout)");

  std::string question;
  std::optional<std::size_t> top_k;
  auto* ask_cmd = app.add_subcommand("ask", "Answer one question and print the JSON response");
  add_common(ask_cmd, common);
  ask_cmd->add_option("question", question, "Question text")->required();
  ask_cmd->add_option("-k,--top-k", top_k, "Number of candidate abstracts")->check(CLI::PositiveNumber);

  std::string gold_path;
  std::string report_path;
  std::string curve_path;
  std::size_t max_effort = 2000;
  std::size_t step = 50;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate against a gold answer file");
  add_common(eval_cmd, common);
  eval_cmd->add_option("--gold", gold_path, "Gold TSV (default: config gold)");
  eval_cmd->add_option("-o,--out", report_path, "Report JSON (default stdout)");
  eval_cmd->add_option("--curve", curve_path, "Recall-vs-effort TSV");
  eval_cmd->add_option("--max-effort", max_effort, "Largest effort cutoff in words")->capture_default_str();
  eval_cmd->add_option("--step", step, "Effort cutoff step in words")->capture_default_str()->check(CLI::PositiveNumber);

  std::string host;
  std::optional<int> port;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  add_common(serve_cmd, common);
  serve_cmd->add_option("--host", host, "Bind address (default: config host)");
  serve_cmd->add_option("-p,--port", port, "Port (default: CLINIQA_PORT, then config port)")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*index_cmd) return run_index(common);
    if (*train_cmd) return run_train(common, cv, compare, export_dir);
    if (*classify_cmd) return run_classify_docs(common, classify_out);
    if (*ask_cmd) return run_ask(common, question, top_k);
    if (*eval_cmd) return run_eval(common, gold_path, report_path, curve_path, max_effort, step);
    if (*serve_cmd) return run_serve(common, host, port);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
