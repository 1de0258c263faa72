#include "vpc/service.hpp"

#include <httplib.h>

#include <sstream>

#include "vpc/corpus.hpp"
#include "vpc/extraction.hpp"

namespace vpc {

using nlohmann::json;

namespace {

struct ApiError {
  int status;
  std::string code, message, at;
};

ApiResponse error_response(const ApiError& e) { return {e.status, json{{"code", e.code}, {"message", e.message}, {"at", e.at}}}; }

json line_json(const ProofLine& l) {
  json conns = json::array();
  for (const auto& c : l.connections) conns.push_back(c.render());
  return {{"label", l.label},     {"statement", l.is_false ? ":false" : l.statement.render()},
          {"false", l.is_false},  {"split", l.split},
          {"connections", conns}, {"text", render_proof_line(l)}};
}

json option_json(const OptionEntry& o, size_t index) {
  return {{"index", index},
          {"label", o.axiom_label},
          {"lines", o.lines},
          {"conclusion", o.falsity ? ":false" : o.conclusion.render()},
          {"falsity", o.falsity},
          {"text", o.render(static_cast<int>(index))}};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::istringstream in(path);
  std::string seg;
  while (std::getline(in, seg, '/'))
    if (!seg.empty()) parts.push_back(seg);
  return parts;
}

}  // namespace

json state_json(const ProofState& s) {
  json lines = json::array();
  for (const auto& l : s.lines()) lines.push_back(line_json(l));
  json j{{"status", to_string(s.status())}, {"complete", s.complete()}, {"premise_count", s.premise_count()}, {"lines", lines}};
  if (s.has_children()) j["children"] = json::array({state_json(s.child(0)), state_json(s.child(1))});
  return j;
}

json options_json(const ProofState& s) {
  json opts = json::array(), falsities = json::array();
  auto o = s.options();
  for (size_t i = 0; i < o.size(); ++i) opts.push_back(option_json(o[i], i + 1));
  auto f = s.falsity_options();
  for (size_t i = 0; i < f.size(); ++i) falsities.push_back(option_json(f[i], i + 1));
  return {{"status", to_string(s.status())}, {"options", opts}, {"falsity_options", falsities}};
}

SessionService::SessionService(std::filesystem::path corpus_root) : root_(std::move(corpus_root)) {}

std::shared_ptr<const TheoryPack> SessionService::pack_for(const std::string& theory, const std::string& until) {
  std::lock_guard<std::mutex> lock(mu_);
  std::string key = theory + "|" + until;
  if (auto it = packs_.find(key); it != packs_.end()) return it->second;
  auto names = list_theories(root_);
  if (std::find(names.begin(), names.end(), theory) == names.end()) throw ApiError{400, "UnknownTheory", "no theory '" + theory + "'", "theory"};
  if (!until.empty()) {
    bool found = false;
    for (const auto& f : proof_files(root_, theory)) found = found || parse_proof_file(read_file(f)).label == until;
    if (!found) throw ApiError{400, "UnknownTheorem", "no corpus proof '" + until + "' in " + theory, "until"};
  }
  std::shared_ptr<const TheoryPack> pack;
  try {
    pack = std::make_shared<const TheoryPack>(load_store(root_, theory, until));
  } catch (const std::runtime_error& e) {
    throw ApiError{500, "CorpusError", e.what(), theory};
  }
  packs_[key] = pack;
  return pack;
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError{404, "UnknownSession", "no session '" + id + "'", id};
  return it->second;
}

ApiResponse SessionService::create(const json& req) {
  if (!req.is_object() || !req.contains("theory") || !req["theory"].is_string()) throw ApiError{400, "BadRequest", "theory is required", "theory"};
  std::string until = req.value("until", std::string());
  auto pack = pack_for(req["theory"].get<std::string>(), until);
  std::vector<Atomic> premises;
  if (req.contains("premises")) {
    if (!req["premises"].is_array()) throw ApiError{400, "BadRequest", "premises must be a list of statements", "premises"};
    for (size_t i = 0; i < req["premises"].size(); ++i) {
      const auto& p = req["premises"][i];
      if (!p.is_string()) throw ApiError{400, "BadRequest", "premise must be a string", "premises[" + std::to_string(i) + "]"};
      try {
        for (auto& a : parse_atomic_sequence(p.get<std::string>())) premises.push_back(std::move(a));
      } catch (const ParseError& e) {
        throw ApiError{400, "ParseError", e.what(), "premises[" + std::to_string(i) + "]"};
      }
    }
  }
  auto s = std::make_shared<Session>();
  s->theory = req["theory"].get<std::string>();
  try {
    s->state = std::make_unique<ProofState>(pack, premises);
  } catch (const ProverError& e) {
    throw ApiError{400, e.code, e.what(), "premises"};
  } catch (const std::exception& e) {
    throw ApiError{400, "InvalidPremises", e.what(), "premises"};
  }
  std::string id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    id = "s" + std::to_string(next_id_++);
    sessions_[id] = s;
  }
  json body = state_json(*s->state);
  body["id"] = id;
  body["theory"] = s->theory;
  return {201, body};
}

ApiResponse SessionService::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    auto parts = split_path(path);
    if (parts.size() < 2 || parts[0] != "v1" || parts[1] != "sessions") throw ApiError{404, "NotFound", "no route " + path, path};
    json req = json::object();
    if (!body.empty()) {
      try {
        req = json::parse(body);
      } catch (const json::parse_error& e) {
        throw ApiError{400, "ParseError", e.what(), "body"};
      }
    }
    if (parts.size() == 2) {
      if (method != "POST") throw ApiError{405, "MethodNotAllowed", method + " " + path, path};
      return create(req);
    }
    auto session = find(parts[2]);
    if (parts.size() == 3 && method == "DELETE") {
      std::lock_guard<std::mutex> lock(mu_);
      sessions_.erase(parts[2]);
      return {200, json{{"id", parts[2]}, {"deleted", true}}};
    }
    std::lock_guard<std::mutex> lock(session->mu);
    ProofState* st = session->state.get();
    size_t i = 3;
    std::string where = parts[2];
    while (i + 1 < parts.size() && parts[i] == "child") {
      if (parts[i + 1] != "0" && parts[i + 1] != "1") throw ApiError{404, "NoSuchChild", "child must be 0 or 1", path};
      try {
        st = &st->child(parts[i + 1] == "0" ? 0 : 1);
      } catch (const ProverError& e) {
        throw ApiError{404, e.code, e.what(), path};
      }
      where += "/child/" + parts[i + 1];
      i += 2;
    }
    std::string action = i < parts.size() ? parts[i] : "";
    if (i + 1 < parts.size()) throw ApiError{404, "NotFound", "no route " + path, path};
    auto state = [&](int status = 200) {
      json j = state_json(*st);
      j["id"] = parts[2];
      j["theory"] = session->theory;
      return ApiResponse{status, j};
    };
    if (method == "GET") {
      if (action.empty()) return state();
      if (action == "options") return {200, options_json(*st)};
      throw ApiError{404, "NotFound", "no route " + path, path};
    }
    if (method != "POST") throw ApiError{405, "MethodNotAllowed", method + " " + path, path};
    try {
      if (action == "step") {
        if (req.contains("option_index")) {
          if (!req["option_index"].is_number_integer() || req["option_index"].get<int64_t>() < 1)
            throw ApiError{400, "BadRequest", "option_index must be a positive integer", "option_index"};
          st->apply_index(req["option_index"].get<size_t>());
        } else if (req.contains("statement") && req.contains("connection")) {
          Atomic stmt;
          std::vector<Connection> conns;
          try {
            stmt = parse_atomic(req["statement"].get<std::string>());
            conns = parse_connections(req["connection"].get<std::string>());
          } catch (const ParseError& e) {
            throw ApiError{400, "ParseError", e.what(), "statement"};
          }
          if (conns.size() != 1) throw ApiError{400, "BadRequest", "step takes exactly one connection", "connection"};
          st->apply_statement(stmt, conns[0]);
        } else {
          throw ApiError{400, "BadRequest", "step needs option_index or statement and connection", where};
        }
        return state();
      }
      if (action == "split") {
        if (!req.contains("line") || !req["line"].is_number_integer()) throw ApiError{400, "BadRequest", "split needs a line", "line"};
        st->split(req["line"].get<int>());
        return state();
      }
      if (action == "contract") {
        st->contract();
        return state();
      }
      if (action == "false") {
        std::vector<Connection> conns;
        try {
          conns = parse_connections(req.value("connection", std::string()));
        } catch (const ParseError& e) {
          throw ApiError{400, "ParseError", e.what(), "connection"};
        }
        if (conns.size() != 1) throw ApiError{400, "BadRequest", "false takes exactly one connection", "connection"};
        st->declare_false(conns[0]);
        return state();
      }
      if (action == "undo") {
        st->undo();
        return state();
      }
      if (action == "extract") {
        if (!st->complete()) throw ApiError{400, "Incomplete", "proof is not complete", where};
        Extraction ex = extract(st->lines());
        std::string label = req.value("label", std::string("thm new"));
        std::string kind = req.value("kind", kind_of_label(label) == EntryKind::Lemma ? std::string("Lemma") : std::string("Theorem"));
        return {200, json{{"statement", ex.statement.render()},
                          {"theorem", render_theorem_block(kind, label, ex, st->lines())},
                          {"redundant_premises", ex.redundant_premises},
                          {"unused_lines", ex.unused_lines},
                          {"used_entries", ex.trace.used_entries},
                          {"warnings", ex.warnings}}};
      }
    } catch (const ProverError& e) {
      throw ApiError{e.code == "StaleOption" ? 409 : 400, e.code, e.what(), where};
    }
    throw ApiError{404, "NotFound", "no route " + path, path};
  } catch (const ApiError& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return error_response({400, "BadRequest", e.what(), path});
  }
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(SessionService& svc) : impl_(std::make_unique<Impl>()) {
  auto route = [&svc](const char* method) {
    return [&svc, method](const httplib::Request& req, httplib::Response& res) {
      ApiResponse r = svc.handle(method, req.path, req.body);
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    };
  };
  impl_->server.Get(R"(/v1/.*)", route("GET"));
  impl_->server.Post(R"(/v1/.*)", route("POST"));
  impl_->server.Delete(R"(/v1/.*)", route("DELETE"));
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace vpc
