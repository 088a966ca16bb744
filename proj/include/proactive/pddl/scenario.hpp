#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "proactive/pddl/pddl.hpp"

namespace proactive::pddl {

/// PDDL text either embedded in the scenario or referenced by a path relative
/// to the scenario file. `text` always holds the content once loaded.
struct TextSource {
  std::optional<std::string> file;
  std::string text;

  bool operator==(const TextSource&) const = default;
};

struct StateSpec {
  std::string id;
  AtomSet atoms;
  double des = 0.0;
  std::string note;

  bool operator==(const StateSpec&) const = default;
};

struct EdgeSpec {
  std::string from;
  std::string label = "null";
  std::string to;

  bool operator==(const EdgeSpec&) const = default;
};

struct GoalSpec {
  std::string name;
  AtomSet atoms;

  bool operator==(const GoalSpec&) const = default;
};

/// A human-only action the robot cannot perform, replaced by a robot action
/// with the same arguments and a message for the human.
struct Substitution {
  std::string human_action;
  std::string robot_action;
  std::string message;

  bool operator==(const Substitution&) const = default;
};

struct EngineParams {
  int K = 2;
  double decrease_factor = 0.5;
  double increase_factor = 0.5;
  std::vector<std::string> choose_order{"degree", "type", "benefit", "lookahead", "name"};
  std::uint32_t seed = 1;

  bool operator==(const EngineParams&) const = default;
};

/// explicit: the free run is the listed edge graph. derived: the free run is
/// the closure of the problem's initial state under the `uncontrollable`
/// actions; listed states then only name states and carry des values.
enum class FreeRunMode { explicit_graph, derived };

struct ScenarioFile {
  int format = 1;
  std::string name;
  TextSource domain;
  TextSource problem;
  FreeRunMode free_run = FreeRunMode::explicit_graph;
  std::vector<std::string> uncontrollable;
  std::vector<GoalSpec> goals;
  double default_des = 0.0;
  std::vector<StateSpec> states;
  std::vector<EdgeSpec> edges;
  std::vector<Substitution> substitutions;
  EngineParams engine;
  std::vector<std::string> trajectory;
  std::vector<std::string> notes;

  DomainModel domain_model;
  ProblemModel problem_model;

  const StateSpec* state(std::string_view id) const;

  bool operator==(const ScenarioFile&) const = default;
};

inline constexpr std::string_view kChooseKeys[] = {"degree", "type", "benefit", "lookahead", "name"};

/// Referenced files are resolved against `base_dir`. Throws ScenarioError for
/// inconsistent content and ParseError for malformed embedded PDDL.
ScenarioFile parse_scenario(const nlohmann::json& document, const std::filesystem::path& base_dir = {});
ScenarioFile parse_scenario_text(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a scenario file. Throws Error when it cannot be read.
ScenarioFile load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioFile& scenario);

/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string render(const ScenarioFile& scenario);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace proactive::pddl
