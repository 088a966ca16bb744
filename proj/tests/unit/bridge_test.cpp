#include <doctest.h>

#include <chrono>
#include <thread>

#include <httplib.h>

#include "common.hpp"
#include "proactive/bridge/bridge.hpp"
#include "proactive/sim/session.hpp"

using namespace proactive;
using namespace proactive::testing;
using nlohmann::json;

TEST_CASE("graph and session resources") {
  Bridge bridge(domestic_scenario(), RunMode::combined);
  auto graph = bridge.handle("GET", "/v1/graph", "");
  REQUIRE(graph.status == 200);
  auto body = json::parse(graph.body);
  CHECK(body.at("states").size() == 18);
  bool sink_loop = false;
  for (const auto& edge : body.at("edges"))
    sink_loop = sink_loop || (edge.at("from") == "s4.0" && edge.at("to") == "s4.0" && edge.at("label") == "null");
  CHECK(sink_loop);

  auto session = json::parse(bridge.handle("GET", "/v1/session", "").body);
  CHECK(session.at("id") == "default");
  CHECK(session.at("current_state") == "s0");
  CHECK(session.at("mode") == "combined");
  CHECK(session.at("step") == 1);
  CHECK(session.at("K") == 2);
  CHECK(session.at("seed") == 1);

  auto opportunities = json::parse(bridge.handle("GET", "/v1/opportunities", "").body);
  REQUIRE(opportunities.is_array());
  REQUIRE_FALSE(opportunities.empty());
  CHECK(opportunities[0].at("action") == "clean-dishes");

  auto trace = bridge.handle("GET", "/v1/trace", "");
  CHECK(trace.content_type == "application/x-ndjson");
  CHECK(parse_jsonl(trace.body).size() == 1);
}

TEST_CASE("UI picks produce the same trace as the CLI replay") {
  for (auto mode : {RunMode::hir, RunMode::eqm, RunMode::combined}) {
    Bridge bridge(domestic_scenario(), mode);
    for (const char* state : {"s1.0", "s2.0", "s3.0"}) {
      auto response = bridge.handle("POST", "/v1/step", json{{"pick", {{"to", state}}}}.dump());
      REQUIRE(response.status == 200);
    }
    CHECK(bridge.handle("GET", "/v1/trace", "").body ==
          to_jsonl(replay(domestic_knowledge(), mode, domestic_scenario().trajectory, 1)));
  }
}

TEST_CASE("mutations") {
  Bridge bridge(domestic_scenario(), RunMode::hir, 4);
  auto step = bridge.handle("POST", "/v1/step", R"({"pick": {"to": "s1.0"}})");
  REQUIRE(step.status == 200);
  CHECK(json::parse(step.body).at("dispatched") == "gather(water-bottle)");

  auto act = bridge.handle("POST", "/v1/step", R"({"pick": {"action": "clean-dishes"}, "outcome": 1})");
  REQUIRE(act.status == 200);
  CHECK(json::parse(act.body).at("pick").at("outcome") == 1);

  auto mode = bridge.handle("POST", "/v1/mode", R"({"mode": "eqm"})");
  REQUIRE(mode.status == 200);
  CHECK(json::parse(bridge.handle("GET", "/v1/session", "").body).at("mode") == "eqm");

  auto reset = bridge.handle("POST", "/v1/reset", R"({"seed": 12})");
  REQUIRE(reset.status == 200);
  auto session = json::parse(bridge.handle("GET", "/v1/session", "").body);
  CHECK(session.at("seed") == 12);
  CHECK(session.at("step") == 1);
  CHECK(session.at("current_state") == "s0");
}

TEST_CASE("request errors") {
  Bridge bridge(domestic_scenario(), RunMode::combined);
  CHECK(bridge.handle("POST", "/v1/step", R"({"pick": {"to": "s3.0"}})").status == 400);
  CHECK(bridge.handle("POST", "/v1/step", R"({"pick": {"to": "s1.0"}, "outcome": 0})").status == 400);
  CHECK(bridge.handle("POST", "/v1/step", "{}").status == 400);
  CHECK(bridge.handle("POST", "/v1/step", "{not json").status == 400);
  CHECK(bridge.handle("POST", "/v1/step", "[1]").status == 400);
  CHECK(bridge.handle("POST", "/v1/mode", R"({"mode": "fast"})").status == 400);
  CHECK(bridge.handle("GET", "/v1/nothing", "").status == 404);
  CHECK(bridge.handle("POST", "/v1/nothing", "").status == 404);
  CHECK(bridge.handle("GET", "/v1/session?session=other", "").status == 404);
  CHECK(bridge.handle("GET", "/v1/session?session=default", "").status == 200);
  CHECK(bridge.handle("DELETE", "/v1/session", "").status == 405);
  CHECK(json::parse(bridge.handle("GET", "/v1/session", "").body).at("step") == 1);
}

TEST_CASE("a mutation during another mutation is refused") {
  Bridge bridge(domestic_scenario(), RunMode::combined);
  {
    auto held = bridge.hold_mutation_lock();
    CHECK(bridge.handle("POST", "/v1/step", R"({"pick": {"to": "s1.0"}})").status == 409);
    CHECK(bridge.handle("POST", "/v1/reset", "").status == 409);
    CHECK(bridge.handle("GET", "/v1/session", "").status == 200);
  }
  CHECK(bridge.handle("POST", "/v1/step", R"({"pick": {"to": "s1.0"}})").status == 200);
}

TEST_CASE("only loopback origins are allowed") {
  CHECK(allowed_origin("http://localhost:5173") == std::optional<std::string>("http://localhost:5173"));
  CHECK(allowed_origin("http://127.0.0.1") == std::optional<std::string>("http://127.0.0.1"));
  CHECK(allowed_origin("http://[::1]:3000").has_value());
  CHECK_FALSE(allowed_origin("http://example.com").has_value());
  CHECK_FALSE(allowed_origin("http://localhost.example.com").has_value());
  CHECK_FALSE(allowed_origin("").has_value());
}

TEST_CASE("the bridge serves over a socket") {
  Bridge bridge(domestic_scenario(), RunMode::combined);
  int port = bridge.bind("127.0.0.1", 0);
  REQUIRE(port > 0);

  std::thread server([&] { bridge.listen(); });
  for (int i = 0; i < 200 && !bridge.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  REQUIRE(bridge.running());

  httplib::Client client("127.0.0.1", port);
  auto session = client.Get("/v1/session", {{"Origin", "http://localhost:5173"}});
  REQUIRE(session);
  CHECK(session->status == 200);
  CHECK(session->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");

  auto foreign = client.Get("/v1/session", {{"Origin", "http://example.com"}});
  REQUIRE(foreign);
  CHECK_FALSE(foreign->has_header("Access-Control-Allow-Origin"));

  auto step = client.Post("/v1/step", R"({"pick": {"to": "s1.0"}})", "application/json");
  REQUIRE(step);
  CHECK(step->status == 200);
  auto missing = client.Get("/v1/session?session=other");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  bridge.stop();
  server.join();
  CHECK_FALSE(bridge.running());
}
