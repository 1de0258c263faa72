#include <doctest.h>

#include <httplib.h>

#include <sstream>
#include <thread>

#include "support.hpp"
#include "vpc/repl.hpp"
#include "vpc/service.hpp"

using namespace vpc;
using nlohmann::json;

namespace {

SessionService& service() {
  static SessionService svc(corpus_root());
  return svc;
}

json call(const std::string& method, const std::string& path, const json& body = nullptr, int want = 200) {
  ApiResponse r = service().handle(method, path, body.is_null() ? "" : body.dump());
  CAPTURE(path);
  CAPTURE(r.body.dump());
  CHECK(r.status == want);
  return r.body;
}

std::string thm17_session() {
  json s = call("POST", "/v1/sessions", {{"theory", "integers"}, {"until", "thm 17"}, {"premises", {"neq [a 0] [ ]", "mult [a a] [b]"}}}, 201);
  return s["id"].get<std::string>();
}

}  // namespace

TEST_CASE("session lifecycle") {
  std::string id = thm17_session();
  json st = call("GET", "/v1/sessions/" + id);
  CHECK(st["status"] == "open");
  CHECK(st["premise_count"] == 2);
  CHECK(st["lines"].size() == 2);

  json opts = call("GET", "/v1/sessions/" + id + "/options");
  REQUIRE(opts["options"].size() > 0);
  CHECK(opts["options"][0]["index"] == 1);

  call("POST", "/v1/sessions/" + id + "/split", {{"line", 1}});
  std::string base = "/v1/sessions/" + id;
  call("POST", base + "/child/0/step", {{"statement", "lt [0 b] [ ]"}, {"connection", "lem 2 [1 2]"}});
  call("POST", base + "/child/1/step", {{"statement", "lt [0 b] [ ]"}, {"connection", "lem 1 [1 2]"}});
  json done = call("POST", base + "/contract");
  CHECK(done["complete"] == true);
  CHECK(done["lines"][2]["text"] == "  3 lt [0 b] [ ]             lem 2 [1 2] lem 1 [1 2]");

  json ex = call("POST", base + "/extract", {{"label", "thm 17"}});
  CHECK(ex["redundant_premises"].empty());
  CHECK(ex["theorem"] == render_proof_file(testing::corpus_proof("integers", "thm 17")));
  CHECK(ex["used_entries"] == json({"lem 2", "lem 1"}));

  call("DELETE", base);
  CHECK(call("GET", base, nullptr, 404)["code"] == "UnknownSession");
}

TEST_CASE("stepping by option index") {
  json s = call("POST", "/v1/sessions", {{"theory", "integers"}, {"until", "thm 1"}, {"premises", {"add [a b] [c]"}}}, 201);
  std::string base = "/v1/sessions/" + s["id"].get<std::string>();
  json opts = call("GET", base + "/options");
  size_t n = opts["options"].size();
  json after = call("POST", base + "/step", {{"option_index", 1}});
  CHECK(after["lines"].size() == 2);
  CHECK(after["lines"][1]["connections"][0] == opts["options"][0]["label"].get<std::string>() + " [1]");
  CHECK(call("POST", base + "/step", {{"option_index", n + 100}}, 409)["code"] == "StaleOption");
  call("POST", base + "/undo");
  CHECK(call("GET", base)["lines"].size() == 1);
  CHECK(call("POST", base + "/extract", json::object(), 400)["code"] == "Incomplete");
}

TEST_CASE("errors") {
  CHECK(call("POST", "/v1/sessions", {{"theory", "nope"}}, 400)["code"] == "UnknownTheory");
  CHECK(call("POST", "/v1/sessions", {{"theory", "integers"}, {"until", "thm 999"}}, 400)["code"] == "UnknownTheorem");
  CHECK(call("POST", "/v1/sessions", {{"theory", "integers"}, {"premises", {"add [a b"}}}, 400)["code"] == "ParseError");
  ApiResponse bad = service().handle("POST", "/v1/sessions", "{not json");
  CHECK(bad.status == 400);
  CHECK(bad.body["code"] == "ParseError");
  CHECK(call("PUT", "/v1/sessions", nullptr, 405)["code"] == "MethodNotAllowed");
  CHECK(call("GET", "/v2/x", nullptr, 404)["code"] == "NotFound");

  std::string base = "/v1/sessions/" + thm17_session();
  CHECK(call("POST", base + "/split", {{"line", 2}}, 400)["code"] == "NotADisjunction");
  CHECK(call("GET", base + "/child/0", nullptr, 404).contains("code"));
  CHECK(call("POST", base + "/false", {{"connection", "ord 7 [1]"}}, 400)["code"] == "NoFalsityMatch");
  CHECK(call("POST", base + "/step", {{"statement", "lt [0 b] [ ]"}, {"connection", "axi 5 [1]"}}, 409)["code"] == "StaleOption");
  json e = call("POST", base + "/step", json::object(), 400);
  CHECK(e.contains("message"));
  CHECK(e.contains("at"));
}

TEST_CASE("http transport") {
  SessionService svc(corpus_root());
  HttpServer server(svc);
  int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread t([&] { server.listen(); });
  httplib::Client cli("127.0.0.1", port);
  for (int i = 0; i < 50 && !cli.Get("/v1/sessions/none"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  auto r = cli.Post("/v1/sessions", R"({"theory":"integers","until":"thm 16"})", "application/json");
  REQUIRE(r);
  CHECK(r->status == 201);
  std::string id = json::parse(r->body)["id"];
  auto g = cli.Get(("/v1/sessions/" + id + "/options").c_str());
  REQUIRE(g);
  CHECK(g->status == 200);
  CHECK(json::parse(g->body)["options"].size() > 0);
  auto m = cli.Get("/v1/sessions/zzz");
  REQUIRE(m);
  CHECK(m->status == 404);
  server.stop();
  t.join();
}

TEST_CASE("repl session") {
  auto pack = std::make_shared<const TheoryPack>(load_store(corpus_root(), "integers", "thm 17"));
  std::istringstream in("split 1\n4\n4\ncontract\nextract thm 17\nquit\n");
  std::ostringstream out;
  int rc = run_repl(pack, parse_atomic_sequence("neq [a 0] [ ] mult [a a] [b]"), in, out);
  CHECK(rc == 0);
  CHECK(out.str().find(render_proof_file(testing::corpus_proof("integers", "thm 17"))) != std::string::npos);

  std::istringstream in2("999\nquit\n");
  std::ostringstream out2;
  CHECK(run_repl(pack, parse_atomic_sequence("mult [a a] [b]"), in2, out2) != 0);
  CHECK(out2.str().find("invalid option 999") != std::string::npos);
}
