#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "cliniqa/config.hpp"
#include "cliniqa/engine.hpp"

namespace cliniqa {

struct HttpResult {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// HTTP front end over an Engine snapshot:
///   POST /ask {"question": str, "top_k": int?}
///   GET  /docs/{id}
///   GET  /health
///   POST /admin/reindex
/// Requests run against the snapshot current when they arrive; reindex
/// rebuilds the index and models, then swaps the snapshot.
class Service {
 public:
  /// Opens the engine for `config`; throws ServiceError when artifacts are missing.
  explicit Service(PipelineConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Routes one request without any network I/O.
  HttpResult handle(std::string_view method, std::string_view path, std::string_view body);

  std::shared_ptr<const Engine> snapshot() const;
  std::size_t reindex_count() const;

  /// Binds and serves until stop(); blocking.
  void listen(const std::string& host, std::uint16_t port);
  /// Binds to a free port and returns it; call serve() afterwards.
  int bind_any_port(const std::string& host);
  void serve();
  void stop();
  void wait_until_ready() const;

 private:
  HttpResult ask(std::string_view body);
  HttpResult doc(std::string_view doc_id);
  HttpResult health();
  HttpResult reindex();
  void install_routes();

  PipelineConfig config_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Engine> snapshot_;
  std::mutex reindex_mutex_;
  std::size_t reindexes_ = 0;

  struct Server;
  std::unique_ptr<Server> server_;
};

}  // namespace cliniqa
