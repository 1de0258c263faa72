#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "vpc/pack.hpp"
#include "vpc/prover.hpp"

namespace vpc {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

nlohmann::json state_json(const ProofState& s);
nlohmann::json options_json(const ProofState& s);

// Proof sessions behind the /v1 JSON protocol. handle() is transport free so
// the same code serves HTTP and tests.
class SessionService {
 public:
  explicit SessionService(std::filesystem::path corpus_root);

  ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

  // Store for a theory: axioms plus every corpus theorem before `until`
  // (all of them when until is empty). Cached.
  std::shared_ptr<const TheoryPack> pack_for(const std::string& theory, const std::string& until = "");

 private:
  struct Session {
    std::string theory;
    std::mutex mu;  // one request per session at a time
    std::unique_ptr<ProofState> state;
  };

  ApiResponse create(const nlohmann::json& req);
  std::shared_ptr<Session> find(const std::string& id);

  std::filesystem::path root_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::map<std::string, std::shared_ptr<const TheoryPack>> packs_;
  uint64_t next_id_ = 1;
};

// Blocking HTTP server on host:port (port 0 picks a free one).
class HttpServer {
 public:
  explicit HttpServer(SessionService& svc);
  ~HttpServer();
  // Binds and returns the port; listen() then blocks until stop().
  int bind(const std::string& host, int port);
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vpc
