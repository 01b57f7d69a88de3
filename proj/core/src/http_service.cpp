#include "cliniqa/http_service.hpp"

#include <httplib.h>
#include <json.hpp>

#include "cliniqa/errors.hpp"

namespace cliniqa {

namespace {

using json = nlohmann::ordered_json;

HttpResult error_result(int status, const std::string& message) {
  return HttpResult{status, json{{"error", message}}.dump()};
}

}  // namespace

struct Service::Server {
  httplib::Server http;
};

Service::Service(PipelineConfig config)
    : config_(std::move(config)), snapshot_(Engine::open(config_)), server_(std::make_unique<Server>()) {
  install_routes();
}

Service::~Service() { stop(); }

std::shared_ptr<const Engine> Service::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

std::size_t Service::reindex_count() const {
  std::lock_guard lock(snapshot_mutex_);
  return reindexes_;
}

HttpResult Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    if (method == "OPTIONS") return HttpResult{204, "", "text/plain"};
    if (path == "/ask") return method == "POST" ? ask(body) : error_result(405, "use POST /ask");
    if (path == "/health") return method == "GET" ? health() : error_result(405, "use GET /health");
    if (path == "/admin/reindex") return method == "POST" ? reindex() : error_result(405, "use POST /admin/reindex");
    constexpr std::string_view docs_prefix = "/docs/";
    if (path.substr(0, docs_prefix.size()) == docs_prefix) {
      return method == "GET" ? doc(path.substr(docs_prefix.size())) : error_result(405, "use GET /docs/{id}");
    }
    return error_result(404, "no route for " + std::string(path));
  } catch (const ServiceError& e) {
    return error_result(503, e.what());
  } catch (const std::exception& e) {
    return error_result(500, e.what());
  }
}

HttpResult Service::ask(std::string_view body) {
  json request;
  try {
    request = json::parse(body);
  } catch (const json::parse_error&) {
    return error_result(400, "request body must be JSON: {\"question\": \"...\", \"top_k\": 10}");
  }
  if (!request.is_object() || !request.contains("question") || !request.at("question").is_string()) {
    return error_result(400, "missing string field 'question'");
  }
  std::optional<std::size_t> top_k;
  if (request.contains("top_k")) {
    const auto& k = request.at("top_k");
    if (!k.is_number_integer() || k.get<long long>() < 1) return error_result(400, "top_k must be an integer >= 1");
    top_k = k.get<std::size_t>();
  }
  const auto engine = snapshot();
  return HttpResult{200, to_json(engine->ask(request.at("question").get<std::string>(), top_k))};
}

HttpResult Service::doc(std::string_view doc_id) {
  const auto engine = snapshot();
  const auto* d = engine->find_doc(doc_id);
  if (!d) return error_result(404, "unknown document '" + std::string(doc_id) + "'");
  json sentences = json::array();
  for (const auto& s : d->sentences) sentences.push_back(json{{"index", s.index}, {"text", s.text}});
  json out{{"doc_id", d->doc_id},
           {"title", d->title},
           {"abstract", d->body},
           {"label", d->label ? json(std::string(to_string(*d->label))) : json(nullptr)},
           {"word_count", d->word_count},
           {"sentences", sentences}};
  return HttpResult{200, out.dump()};
}

HttpResult Service::health() {
  const auto engine = snapshot();
  json out{{"status", "ok"},
           {"documents", engine->corpus().size()},
           {"evidence_documents", engine->evidence_index().document_count()},
           {"evidence_fallback", engine->evidence().fallback},
           {"questions_asked", engine->questions_asked()},
           {"retrievals", engine->retrievals()},
           {"refusals", engine->refusals()},
           {"reindexes", reindex_count()}};
  return HttpResult{200, out.dump()};
}

HttpResult Service::reindex() {
  std::lock_guard writer(reindex_mutex_);
  build_index_file(config_);
  train_models(config_);
  auto fresh = Engine::open(config_);
  const auto documents = fresh->corpus().size();
  {
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(fresh);
    ++reindexes_;
  }
  return HttpResult{200, json{{"status", "reindexed"}, {"documents", documents}}.dump()};
}

void Service::install_routes() {
  auto& http = server_->http;
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                            {"Access-Control-Allow-Headers", "Content-Type"}});
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const auto result = handle(req.method, req.path, req.body);
    res.status = result.status;
    res.set_content(result.body, result.content_type);
  };
  http.Get(".*", forward);
  http.Post(".*", forward);
  http.Options(".*", forward);
}

void Service::listen(const std::string& host, std::uint16_t port) {
  if (!server_->http.listen(host, port)) {
    throw ServiceError("cannot listen on " + host + ":" + std::to_string(port) +
                       "; pick another port with --port or CLINIQA_PORT");
  }
}

int Service::bind_any_port(const std::string& host) {
  const int port = server_->http.bind_to_any_port(host);
  if (port < 0) throw ServiceError("cannot bind a port on " + host);
  return port;
}

void Service::serve() { server_->http.listen_after_bind(); }

void Service::stop() {
  if (server_ && server_->http.is_running()) server_->http.stop();
}

void Service::wait_until_ready() const { server_->http.wait_until_ready(); }

}  // namespace cliniqa
