#include "cliniqa/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cliniqa/errors.hpp"
#include "numeric_format.hpp"

namespace cliniqa {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  if (value.empty()) return {};
  std::filesystem::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

StageSpec parse_stage(const json& j, const std::string& where) {
  reject_unknown(j, {"algorithm", "features", "penalty", "gamma", "kernel", "tolerance", "max_iterations", "k",
                     "smoothing"},
                 where);
  StageSpec s;
  if (j.contains("algorithm")) s.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  if (j.contains("features")) s.features = parse_feature_set(j.at("features").get<std::string>());
  auto& p = s.params;
  p.penalty = j.value("penalty", p.penalty);
  p.gamma = j.value("gamma", p.gamma);
  if (j.contains("kernel")) p.kernel = parse_kernel(j.at("kernel").get<std::string>());
  p.tolerance = j.value("tolerance", p.tolerance);
  p.max_iterations = j.value("max_iterations", p.max_iterations);
  p.k = j.value("k", p.k);
  p.smoothing = j.value("smoothing", p.smoothing);
  if (!(p.penalty > 0.0)) throw ParseError(where + ": penalty must be positive");
  if (!(p.gamma > 0.0)) throw ParseError(where + ": gamma must be positive");
  if (p.k == 0) throw ParseError(where + ": k must be at least 1");
  if (p.smoothing < 0.0) throw ParseError(where + ": smoothing must be non-negative");
  return s;
}

json stage_json(const StageSpec& s) {
  return json{{"algorithm", std::string(to_string(s.algorithm))},
              {"features", std::string(to_string(s.features))},
              {"penalty", s.params.penalty},
              {"gamma", s.params.gamma},
              {"kernel", std::string(to_string(s.params.kernel))},
              {"tolerance", s.params.tolerance},
              {"max_iterations", s.params.max_iterations},
              {"k", s.params.k},
              {"smoothing", s.params.smoothing}};
}

}  // namespace

PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  PipelineConfig c;
  try {
    const auto j = json::parse(json_text);
    if (!j.is_object()) throw ParseError("config: expected a JSON object");
    reject_unknown(j, {"corpus", "lexicon", "questions", "gold", "index", "models", "classifiers", "classify_documents",
                       "gold_override", "top_k", "bias", "term_mode", "log_base", "seed", "cv_folds", "host", "port"},
                   "config");
    for (const char* key : {"corpus", "lexicon", "questions", "index", "models"}) {
      if (!j.contains(key)) throw ParseError(std::string("config: missing required key '") + key + "'");
    }
    c.corpus = resolve(base_dir, j.at("corpus").get<std::string>());
    c.lexicon = resolve(base_dir, j.at("lexicon").get<std::string>());
    c.questions = resolve(base_dir, j.at("questions").get<std::string>());
    c.gold = resolve(base_dir, j.value("gold", std::string{}));
    c.index = resolve(base_dir, j.at("index").get<std::string>());
    c.models = resolve(base_dir, j.at("models").get<std::string>());
    if (j.contains("classifiers")) {
      const auto& cl = j.at("classifiers");
      reject_unknown(cl, {"doc", "answerable", "focus"}, "config.classifiers");
      if (cl.contains("doc")) c.doc_stage = parse_stage(cl.at("doc"), "config.classifiers.doc");
      if (cl.contains("answerable")) c.gate_stage = parse_stage(cl.at("answerable"), "config.classifiers.answerable");
      if (cl.contains("focus")) c.focus_stage = parse_stage(cl.at("focus"), "config.classifiers.focus");
    }
    c.classify_documents = j.value("classify_documents", c.classify_documents);
    c.gold_override = j.value("gold_override", c.gold_override);
    if (j.contains("top_k")) {
      const auto k = j.at("top_k").get<long long>();
      if (k < 1) throw ParseError("config: top_k must be at least 1");
      c.top_k = static_cast<std::size_t>(k);
    }
    if (j.contains("bias")) {
      const auto& b = j.at("bias");
      reject_unknown(b, {"phrase", "tag"}, "config.bias");
      c.phrase_bias = b.value("phrase", c.phrase_bias);
      c.tag_bias = b.value("tag", c.tag_bias);
    }
    if (j.contains("term_mode")) c.term_mode = parse_term_mode(j.at("term_mode").get<std::string>());
    if (j.contains("log_base")) {
      const auto& lb = j.at("log_base");
      if (lb.is_string() && lb.get<std::string>() == "e") {
        c.log_base = 2.718281828459045;
      } else {
        c.log_base = lb.get<double>();
      }
      if (!(c.log_base > 0.0) || c.log_base == 1.0) throw ParseError("config: log_base must be positive and != 1");
    }
    c.seed = j.value("seed", c.seed);
    c.cv_folds = j.value("cv_folds", c.cv_folds);
    if (c.cv_folds < 2) throw ParseError("config: cv_folds must be at least 2");
    c.host = j.value("host", c.host);
    if (j.contains("port")) {
      const auto port = j.at("port").get<long long>();
      if (port < 0 || port > 65535) throw ParseError("config: port out of range");
      c.port = static_cast<std::uint16_t>(port);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

std::string config_to_json(const PipelineConfig& c) {
  json j{{"corpus", c.corpus.string()},
         {"lexicon", c.lexicon.string()},
         {"questions", c.questions.string()},
         {"gold", c.gold.string()},
         {"index", c.index.string()},
         {"models", c.models.string()},
         {"classifiers",
          {{"doc", stage_json(c.doc_stage)}, {"answerable", stage_json(c.gate_stage)}, {"focus", stage_json(c.focus_stage)}}},
         {"classify_documents", c.classify_documents},
         {"gold_override", c.gold_override},
         {"top_k", c.top_k},
         {"bias", {{"phrase", c.phrase_bias}, {"tag", c.tag_bias}}},
         {"term_mode", std::string(to_string(c.term_mode))},
         {"log_base", c.log_base},
         {"seed", c.seed},
         {"cv_folds", c.cv_folds},
         {"host", c.host},
         {"port", c.port}};
  return j.dump(2);
}

void require_inputs(const PipelineConfig& c) {
  const std::pair<const char*, const std::filesystem::path*> inputs[] = {
      {"corpus", &c.corpus}, {"lexicon", &c.lexicon}, {"questions", &c.questions}};
  for (const auto& [name, path] : inputs) {
    if (!std::filesystem::exists(*path)) throw DataError(std::string(name) + " file not found: " + path->string());
  }
}

std::uint16_t effective_port(const PipelineConfig& config) {
  if (const char* env = std::getenv("CLINIQA_PORT"); env && *env) {
    const auto port = detail::parse_integer<unsigned>(env);
    if (!port || *port > 65535) throw ParseError(std::string("CLINIQA_PORT is not a valid port: ") + env);
    return static_cast<std::uint16_t>(*port);
  }
  return config.port;
}

}  // namespace cliniqa
