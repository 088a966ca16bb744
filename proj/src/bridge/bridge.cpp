#include "proactive/bridge/bridge.hpp"

#include <regex>

#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include "proactive/error.hpp"

namespace proactive {

using nlohmann::json;

namespace {

HttpResponse json_response(int status, const json& body) { return {status, body.dump(), "application/json"}; }

HttpResponse error_response(int status, std::string_view message) {
  return json_response(status, json{{"error", message}});
}

std::string initial_state(const pddl::ScenarioFile& scenario, const Knowledge& knowledge) {
  if (!scenario.trajectory.empty()) return scenario.trajectory.front();
  if (knowledge.system.size() == 0) throw ScenarioError(ScenarioError::Kind::malformed, "scenario has no states");
  return knowledge.system.state(0).id;
}

json parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return json::object();
  auto value = json::parse(body);
  if (!value.is_object()) throw Error("request body must be a JSON object");
  return value;
}

}  // namespace

std::optional<std::string> allowed_origin(std::string_view origin) {
  static const std::regex loopback(R"(^https?://(localhost|127\.0\.0\.1|\[::1\])(:\d+)?$)");
  std::string text(origin);
  if (std::regex_match(text, loopback)) return text;
  return std::nullopt;
}

Bridge::Bridge(const pddl::ScenarioFile& scenario, RunMode mode, std::optional<std::uint32_t> seed)
    : knowledge_(std::make_shared<const Knowledge>(compile(scenario))),
      initial_state_(initial_state(scenario, *knowledge_)),
      session_(knowledge_, mode, seed.value_or(scenario.engine.seed)),
      server_(std::make_unique<httplib::Server>()) {
  session_.start(initial_state_);
}

Bridge::~Bridge() { stop(); }

HttpResponse Bridge::handle(std::string_view method, std::string_view target, std::string_view body) {
  std::string_view path = target;
  if (auto query = target.find('?'); query != std::string_view::npos) {
    path = target.substr(0, query);
    httplib::Params params;
    httplib::detail::parse_query_text(std::string(target.substr(query + 1)), params);
    if (auto it = params.find("session"); it != params.end() && it->second != kSessionId)
      return error_response(404, fmt::format("unknown session '{}'", it->second));
  }

  try {
    if (method == "GET") return read(path);
    if (method == "POST") return mutate(path, body);
    return error_response(405, fmt::format("method {} not allowed", method));
  } catch (const IllegalPick& e) {
    return error_response(400, e.what());
  } catch (const json::exception& e) {
    return error_response(400, fmt::format("malformed request: {}", e.what()));
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
}

HttpResponse Bridge::read(std::string_view path) const {
  std::shared_lock lock(data_);
  if (path == "/v1/graph") {
    const auto& system = knowledge_->system;
    json states = json::array();
    for (const auto& state : system.states()) {
      auto atoms = to_strings(state.atoms);
      std::sort(atoms.begin(), atoms.end());
      states.push_back({{"id", state.id}, {"atoms", atoms}, {"des", knowledge_->des.degree(state.id)}});
    }
    json edges = json::array();
    for (const auto& t : system.transitions())
      edges.push_back({{"from", system.state(t.from).id}, {"label", to_string(t.label)}, {"to", system.state(t.to).id}});
    for (StateIndex i = 0; i < system.size(); ++i)
      if (system.completed_sink(i))
        edges.push_back({{"from", system.state(i).id}, {"label", "null"}, {"to", system.state(i).id}});
    return json_response(200, json{{"states", states}, {"edges", edges}});
  }
  if (path == "/v1/session") {
    return json_response(200, json{{"id", kSessionId},
                                   {"current_state", session_.label()},
                                   {"anchor", session_.anchor()},
                                   {"mode", std::string(to_string(session_.mode()))},
                                   {"step", session_.steps()},
                                   {"K", knowledge_->horizon},
                                   {"seed", session_.seed()}});
  }
  if (path == "/v1/opportunities") {
    json list = json::array();
    for (const auto& opportunity : session_.peek().opportunities) list.push_back(to_json(opportunity));
    return json_response(200, list);
  }
  if (path == "/v1/trace") return {200, to_jsonl(session_.trace()), "application/x-ndjson"};
  return error_response(404, fmt::format("no resource {}", path));
}

HttpResponse Bridge::mutate(std::string_view path, std::string_view body) {
  if (path != "/v1/step" && path != "/v1/mode" && path != "/v1/reset")
    return error_response(404, fmt::format("no resource {}", path));
  std::unique_lock guard(mutation_, std::try_to_lock);
  if (!guard.owns_lock()) return error_response(409, "another step is in progress");
  auto request = parse_body(body);
  std::unique_lock lock(data_);

  if (path == "/v1/step") {
    if (!request.contains("pick")) throw IllegalPick("missing 'pick'");
    auto pick = pick_from_json(request.at("pick"));
    if (request.contains("outcome") && !request.at("outcome").is_null()) {
      if (pick.kind != Pick::Kind::action) throw IllegalPick("'outcome' only applies to action picks");
      pick.outcome = request.at("outcome").get<std::size_t>();
    }
    return json_response(200, to_json(session_.step(pick)));
  }
  if (path == "/v1/mode") {
    session_.set_mode(parse_run_mode(request.at("mode").get<std::string>()));
    return json_response(200, to_json(session_.trace().back()));
  }
  std::uint32_t seed = request.contains("seed") ? request.at("seed").get<std::uint32_t>() : session_.seed();
  session_.reset(seed);
  return json_response(200, to_json(session_.start(initial_state_)));
}

int Bridge::bind(const std::string& host, int port) {
  auto route = [this](const httplib::Request& request, httplib::Response& response) {
    auto target = request.path;
    if (!request.params.empty()) {
      target += '?';
      bool first = true;
      for (const auto& [key, value] : request.params) {
        if (!first) target += '&';
        target += httplib::detail::encode_query_param(key) + "=" + httplib::detail::encode_query_param(value);
        first = false;
      }
    }
    auto result = handle(request.method, target, request.body);
    response.status = result.status;
    response.set_content(result.body, result.content_type);
    spdlog::info("{} {} -> {}", request.method, request.path, result.status);
  };
  server_->set_post_routing_handler([](const httplib::Request& request, httplib::Response& response) {
    if (auto origin = allowed_origin(request.get_header_value("Origin"))) {
      response.set_header("Access-Control-Allow-Origin", *origin);
      response.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      response.set_header("Access-Control-Allow-Headers", "Content-Type");
      response.set_header("Vary", "Origin");
    }
  });
  server_->Get(R"(/v1/.*)", route);
  server_->Post(R"(/v1/.*)", route);
  server_->Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& response) { response.status = 204; });

  int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw Error(fmt::format("cannot bind {}:{}", host, port));
  spdlog::info("bridge listening on http://{}:{}", host, bound);
  return bound;
}

void Bridge::listen() { server_->listen_after_bind(); }

void Bridge::serve(const std::string& host, int port) {
  bind(host, port);
  listen();
}

void Bridge::stop() { server_->stop(); }

bool Bridge::running() const { return server_->is_running(); }

}  // namespace proactive
