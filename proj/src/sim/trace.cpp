#include "proactive/sim/trace.hpp"

#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "proactive/error.hpp"

namespace proactive {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& value, std::string_view key) {
  const auto& item = value.at(key);
  if (item.is_null()) return std::nullopt;
  return item.get<T>();
}

OpportunitySource parse_source(const std::string& text) {
  if (text == "hir") return OpportunitySource::hir;
  if (text == "eqm") return OpportunitySource::eqm;
  throw Error(fmt::format("unknown opportunity source '{}'", text));
}

}  // namespace

json to_json(const Opportunity& o) {
  return json{{"acting_state", o.acting_state}, {"action", o.action},   {"benefit", o.benefit},
              {"degree", o.degree},             {"k", o.lookahead},     {"source", std::string(to_string(o.source))},
              {"type", o.type}};
}

Opportunity opportunity_from_json(const json& value) {
  Opportunity o;
  o.acting_state = value.at("acting_state").get<std::string>();
  o.action = value.at("action").get<std::string>();
  o.benefit = value.at("benefit").get<double>();
  o.degree = value.at("degree").get<double>();
  o.lookahead = value.at("k").get<int>();
  o.source = parse_source(value.at("source").get<std::string>());
  o.type = value.at("type").get<int>();
  return o;
}

json to_json(const Pick& pick) {
  switch (pick.kind) {
    case Pick::Kind::none:
      return nullptr;
    case Pick::Kind::transition:
      return json{{"to", pick.target}};
    case Pick::Kind::action:
      return json{{"action", pick.target}, {"outcome", optional_json(pick.outcome)}};
  }
  return nullptr;
}

Pick pick_from_json(const json& value) {
  if (value.is_null()) return Pick::none();
  if (!value.is_object()) throw Error("pick must be null or an object");
  if (value.contains("to")) return Pick::to(value.at("to").get<std::string>());
  if (value.contains("action")) {
    std::optional<std::size_t> outcome;
    if (value.contains("outcome") && !value.at("outcome").is_null()) outcome = value.at("outcome").get<std::size_t>();
    return Pick::act(value.at("action").get<std::string>(), outcome);
  }
  throw Error("pick needs 'to' or 'action'");
}

json to_json(const TraceEvent& e) {
  json opportunities = json::array();
  for (const auto& o : e.opportunities) opportunities.push_back(to_json(o));
  json intention = nullptr;
  if (e.intention) intention = json{{"goal", e.intention->goal}, {"plan", e.intention->plan}};
  return json{{"schema", kTraceSchema},
              {"step", e.step},
              {"mode", std::string(to_string(e.mode))},
              {"pick", to_json(e.pick)},
              {"state", e.state},
              {"atoms", e.atoms},
              {"graph_state", optional_json(e.graph_state)},
              {"changed", e.changed},
              {"intention", intention},
              {"opportunities", opportunities},
              {"chosen", e.chosen ? to_json(*e.chosen) : json(nullptr)},
              {"deferred", e.deferred},
              {"dispatched", optional_json(e.dispatched)},
              {"message", optional_json(e.message)},
              {"outcome", optional_json(e.outcome)},
              {"result_state", e.result_state},
              {"seed", e.seed}};
}

TraceEvent event_from_json(const json& value) {
  try {
    if (value.at("schema").get<std::string>() != kTraceSchema)
      throw Error(fmt::format("unsupported trace schema '{}'", value.at("schema").get<std::string>()));
    TraceEvent e;
    e.step = value.at("step").get<std::size_t>();
    e.mode = parse_run_mode(value.at("mode").get<std::string>());
    e.pick = pick_from_json(value.at("pick"));
    e.state = value.at("state").get<std::string>();
    e.atoms = value.at("atoms").get<std::vector<std::string>>();
    e.graph_state = optional_from<std::string>(value, "graph_state");
    e.changed = value.at("changed").get<bool>();
    if (const auto& intention = value.at("intention"); !intention.is_null())
      e.intention = IntentionRecord{intention.at("goal").get<std::string>(),
                                    intention.at("plan").get<std::vector<std::string>>()};
    for (const auto& o : value.at("opportunities")) e.opportunities.push_back(opportunity_from_json(o));
    if (const auto& chosen = value.at("chosen"); !chosen.is_null()) e.chosen = opportunity_from_json(chosen);
    e.deferred = value.at("deferred").get<bool>();
    e.dispatched = optional_from<std::string>(value, "dispatched");
    e.message = optional_from<std::string>(value, "message");
    e.outcome = optional_from<std::size_t>(value, "outcome");
    e.result_state = value.at("result_state").get<std::string>();
    e.seed = value.at("seed").get<std::uint32_t>();
    return e;
  } catch (const json::exception& ex) {
    throw Error(fmt::format("malformed trace event: {}", ex.what()));
  }
}

void write_jsonl(std::ostream& out, const std::vector<TraceEvent>& events) {
  for (const auto& event : events) out << to_json(event).dump() << '\n';
}

std::string to_jsonl(const std::vector<TraceEvent>& events) {
  std::ostringstream out;
  write_jsonl(out, events);
  return out.str();
}

std::vector<TraceEvent> parse_jsonl(std::string_view text) {
  std::vector<TraceEvent> events;
  std::size_t line_number = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(begin, end - begin);
    ++line_number;
    begin = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json value;
    try {
      value = json::parse(line);
    } catch (const json::parse_error& ex) {
      throw Error(fmt::format("trace line {}: {}", line_number, ex.what()));
    }
    events.push_back(event_from_json(value));
  }
  return events;
}

}  // namespace proactive
