#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "proactive/eqm/opportunity.hpp"
#include "proactive/select/select.hpp"

namespace proactive {

inline constexpr std::string_view kTraceSchema = "proactive-trace/1";

/// What moved the world before a decision: nothing (the first state), a
/// free-run transition to a graph state, or a human action with the chosen
/// outcome.
struct Pick {
  enum class Kind { none, transition, action };

  Kind kind = Kind::none;
  std::string target;
  std::optional<std::size_t> outcome;

  static Pick none() { return {}; }
  static Pick to(std::string state) { return {Kind::transition, std::move(state), std::nullopt}; }
  static Pick act(std::string action, std::optional<std::size_t> outcome = std::nullopt) {
    return {Kind::action, std::move(action), outcome};
  }

  bool operator==(const Pick&) const = default;
};

struct IntentionRecord {
  std::string goal;
  std::vector<std::string> plan;

  bool operator==(const IntentionRecord&) const = default;
};

struct TraceEvent {
  std::size_t step = 0;
  RunMode mode = RunMode::combined;
  Pick pick;
  std::string state;
  std::vector<std::string> atoms;
  std::optional<std::string> graph_state;
  bool changed = true;
  std::optional<IntentionRecord> intention;
  std::vector<Opportunity> opportunities;
  std::optional<Opportunity> chosen;
  bool deferred = false;
  std::optional<std::string> dispatched;
  std::optional<std::string> message;
  std::optional<std::size_t> outcome;
  std::string result_state;
  std::uint32_t seed = 0;

  bool operator==(const TraceEvent&) const = default;
};

nlohmann::json to_json(const Opportunity& opportunity);
Opportunity opportunity_from_json(const nlohmann::json& value);

nlohmann::json to_json(const Pick& pick);
Pick pick_from_json(const nlohmann::json& value);

nlohmann::json to_json(const TraceEvent& event);
/// Throws Error on schema violations.
TraceEvent event_from_json(const nlohmann::json& value);

/// One compact JSON object per line, keys sorted.
std::string to_jsonl(const std::vector<TraceEvent>& events);
void write_jsonl(std::ostream& out, const std::vector<TraceEvent>& events);
std::vector<TraceEvent> parse_jsonl(std::string_view text);

}  // namespace proactive
