#include "proactive/pddl/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "proactive/model/dynamic_system.hpp"

namespace proactive::pddl {

using nlohmann::json;
using Kind = ScenarioError::Kind;

namespace {

[[noreturn]] void fail(Kind kind, const std::string& message) { throw ScenarioError(kind, message); }

const json& field(const json& object, std::string_view key, std::string_view where) {
  auto it = object.find(key);
  if (it == object.end()) fail(Kind::malformed, fmt::format("{}: missing field '{}'", where, key));
  return *it;
}

template <typename T>
T get(const json& object, std::string_view key, std::string_view where) {
  const auto& value = field(object, key, where);
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    fail(Kind::malformed, fmt::format("{}: field '{}' has the wrong type", where, key));
  }
}

template <typename T>
T get_or(const json& object, std::string_view key, std::string_view where, T fallback) {
  if (!object.contains(key)) return fallback;
  return get<T>(object, key, where);
}

const json& array_field(const json& object, std::string_view key, std::string_view where) {
  const auto& value = field(object, key, where);
  if (!value.is_array()) fail(Kind::malformed, fmt::format("{}: field '{}' must be an array", where, key));
  return value;
}

TextSource read_source(const json& value, const std::filesystem::path& base_dir, std::string_view where) {
  if (!value.is_object()) fail(Kind::malformed, fmt::format("{} must be an object with 'file' or 'text'", where));
  TextSource source;
  if (value.contains("file")) {
    source.file = get<std::string>(value, "file", where);
    source.text = read_text_file(base_dir / *source.file);
  } else {
    source.text = get<std::string>(value, "text", where);
  }
  return source;
}

AtomSet read_atoms(const json& value, std::string_view where) {
  if (!value.is_array()) fail(Kind::malformed, fmt::format("{}: atoms must be an array", where));
  AtomSet atoms;
  for (const auto& item : value) {
    if (!item.is_string()) fail(Kind::malformed, fmt::format("{}: atoms must be strings", where));
    Atom atom;
    try {
      atom = parse_atom(item.get<std::string>());
    } catch (const ParseError& e) {
      fail(Kind::malformed, fmt::format("{}: bad atom '{}': {}", where, item.get<std::string>(), e.detail()));
    }
    if (!atoms.insert(std::move(atom)).second)
      fail(Kind::malformed, fmt::format("{}: duplicate atom '{}'", where, item.get<std::string>()));
  }
  return atoms;
}

void check_atoms(const AtomSet& atoms, const ScenarioFile& scenario, std::string_view where) {
  for (const auto& atom : atoms) {
    auto reason = check_atom(atom, scenario.domain_model, scenario.problem_model.objects);
    if (!reason.empty()) fail(Kind::undeclared_symbol, fmt::format("{}: {}", where, reason));
  }
}

void check_degree(double value, std::string_view where) {
  if (!(value >= 0.0 && value <= 1.0))
    fail(Kind::des_out_of_range, fmt::format("{}: des {} is outside [0, 1]", where, value));
}

void validate(const ScenarioFile& scenario) {
  check_degree(scenario.default_des, "default_des");

  std::set<std::string, std::less<>> ids;
  std::set<AtomSet> atom_sets;
  for (const auto& state : scenario.states) {
    auto where = fmt::format("state '{}'", state.id);
    if (state.id.empty()) fail(Kind::malformed, "state with an empty id");
    if (!ids.insert(state.id).second) fail(Kind::duplicate_state, fmt::format("duplicate state id '{}'", state.id));
    if (!atom_sets.insert(state.atoms).second)
      fail(Kind::duplicate_state, fmt::format("{} repeats the atoms of an earlier state", where));
    check_degree(state.des, where);
    check_atoms(state.atoms, scenario, where);
  }

  for (const auto& edge : scenario.edges) {
    if (!ids.contains(edge.from) || !ids.contains(edge.to))
      fail(Kind::dangling_state, fmt::format("edge {} -> {} names an unknown state", edge.from, edge.to));
    try {
      InputLabel::parse(edge.label);
    } catch (const Error& e) {
      fail(Kind::malformed, fmt::format("edge {} -> {}: {}", edge.from, edge.to, e.what()));
    }
  }
  for (const auto& id : scenario.trajectory)
    if (!ids.contains(id)) fail(Kind::dangling_state, fmt::format("trajectory names unknown state '{}'", id));

  std::set<std::string, std::less<>> goal_names;
  for (const auto& goal : scenario.goals) {
    if (goal.name.empty()) fail(Kind::malformed, "goal with an empty name");
    if (!goal_names.insert(goal.name).second) fail(Kind::malformed, fmt::format("duplicate goal '{}'", goal.name));
    if (goal.atoms.empty()) fail(Kind::malformed, fmt::format("goal '{}' has no atoms", goal.name));
    check_atoms(goal.atoms, scenario, fmt::format("goal '{}'", goal.name));
  }

  for (const auto& substitution : scenario.substitutions) {
    const auto* human = scenario.domain_model.action(substitution.human_action);
    const auto* robot = scenario.domain_model.action(substitution.robot_action);
    if (!human || !robot)
      fail(Kind::undeclared_symbol, fmt::format("substitution {} -> {} names an unknown action",
                                                substitution.human_action, substitution.robot_action));
    if (!robot_capable(robot->agent))
      fail(Kind::invalid_parameter, fmt::format("substitute '{}' is not a robot action", robot->name));
    if (human->parameters.size() != robot->parameters.size())
      fail(Kind::invalid_parameter, fmt::format("substitution {} -> {} changes the arity", human->name, robot->name));
  }
  for (const auto& name : scenario.uncontrollable)
    if (!scenario.domain_model.action(name))
      fail(Kind::undeclared_symbol, fmt::format("unknown uncontrollable action '{}'", name));

  const auto& engine = scenario.engine;
  if (engine.K < 0) fail(Kind::invalid_parameter, fmt::format("K must be >= 0, got {}", engine.K));
  if (!(engine.decrease_factor >= 0.0 && engine.decrease_factor < 1.0))
    fail(Kind::invalid_parameter, fmt::format("decrease_factor {} is outside [0, 1)", engine.decrease_factor));
  if (!(engine.increase_factor > 0.0 && engine.increase_factor <= 1.0))
    fail(Kind::invalid_parameter, fmt::format("increase_factor {} is outside (0, 1]", engine.increase_factor));
  std::set<std::string, std::less<>> keys;
  for (const auto& key : engine.choose_order) {
    if (std::find(std::begin(kChooseKeys), std::end(kChooseKeys), key) == std::end(kChooseKeys))
      fail(Kind::invalid_parameter, fmt::format("unknown choose_order key '{}'", key));
    if (!keys.insert(key).second) fail(Kind::invalid_parameter, fmt::format("choose_order repeats '{}'", key));
  }
}

json source_json(const TextSource& source) {
  if (source.file) return json{{"file", *source.file}};
  return json{{"text", source.text}};
}

json atoms_json(const AtomSet& atoms) { return to_strings(atoms); }

}  // namespace

const StateSpec* ScenarioFile::state(std::string_view id) const {
  auto it = std::find_if(states.begin(), states.end(), [&](const auto& s) { return s.id == id; });
  return it == states.end() ? nullptr : &*it;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ScenarioFile parse_scenario(const json& document, const std::filesystem::path& base_dir) {
  if (!document.is_object()) fail(Kind::malformed, "scenario must be a JSON object");
  ScenarioFile scenario;
  scenario.format = get<int>(document, "format", "scenario");
  if (scenario.format != 1) fail(Kind::unsupported_format, fmt::format("unsupported format {}", scenario.format));
  scenario.name = get<std::string>(document, "name", "scenario");

  scenario.domain = read_source(field(document, "domain", "scenario"), base_dir, "domain");
  scenario.problem = read_source(field(document, "problem", "scenario"), base_dir, "problem");
  scenario.domain_model = parse_domain(scenario.domain.text);
  scenario.problem_model = parse_problem(scenario.problem.text, scenario.domain_model);

  auto free_run = get_or<std::string>(document, "free_run", "scenario", "explicit");
  if (free_run == "explicit") {
    scenario.free_run = FreeRunMode::explicit_graph;
  } else if (free_run == "derived") {
    scenario.free_run = FreeRunMode::derived;
  } else {
    fail(Kind::invalid_parameter, fmt::format("unknown free_run mode '{}'", free_run));
  }
  scenario.uncontrollable = get_or<std::vector<std::string>>(document, "uncontrollable", "scenario", {});

  for (const auto& item : array_field(document, "goals", "scenario")) {
    GoalSpec goal;
    goal.name = get<std::string>(item, "name", "goal");
    goal.atoms = read_atoms(field(item, "atoms", "goal"), fmt::format("goal '{}'", goal.name));
    scenario.goals.push_back(std::move(goal));
  }

  scenario.default_des = get_or<double>(document, "default_des", "scenario", 0.0);
  for (const auto& item : array_field(document, "states", "scenario")) {
    StateSpec state;
    state.id = get<std::string>(item, "id", "state");
    auto where = fmt::format("state '{}'", state.id);
    state.atoms = read_atoms(field(item, "atoms", where), where);
    state.des = get<double>(item, "des", where);
    state.note = get_or<std::string>(item, "note", where, "");
    scenario.states.push_back(std::move(state));
  }
  for (const auto& item : get_or<json>(document, "edges", "scenario", json::array())) {
    EdgeSpec edge;
    edge.from = get<std::string>(item, "from", "edge");
    edge.to = get<std::string>(item, "to", "edge");
    edge.label = get_or<std::string>(item, "label", "edge", "null");
    scenario.edges.push_back(std::move(edge));
  }
  for (const auto& item : get_or<json>(document, "substitutions", "scenario", json::array())) {
    Substitution substitution;
    substitution.human_action = get<std::string>(item, "human_action", "substitution");
    substitution.robot_action = get<std::string>(item, "robot_action", "substitution");
    substitution.message = get_or<std::string>(item, "message", "substitution", "");
    scenario.substitutions.push_back(std::move(substitution));
  }

  if (document.contains("engine")) {
    const auto& engine = field(document, "engine", "scenario");
    EngineParams defaults;
    scenario.engine.K = get_or<int>(engine, "K", "engine", defaults.K);
    scenario.engine.decrease_factor = get_or<double>(engine, "decrease_factor", "engine", defaults.decrease_factor);
    scenario.engine.increase_factor = get_or<double>(engine, "increase_factor", "engine", defaults.increase_factor);
    scenario.engine.choose_order =
        get_or<std::vector<std::string>>(engine, "choose_order", "engine", defaults.choose_order);
    scenario.engine.seed = get_or<std::uint32_t>(engine, "seed", "engine", defaults.seed);
  }
  scenario.trajectory = get_or<std::vector<std::string>>(document, "trajectory", "scenario", {});
  scenario.notes = get_or<std::vector<std::string>>(document, "notes", "scenario", {});

  validate(scenario);
  return scenario;
}

ScenarioFile parse_scenario_text(std::string_view text, const std::filesystem::path& base_dir) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Kind::malformed, fmt::format("invalid JSON: {}", e.what()));
  }
  return parse_scenario(document, base_dir);
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  return parse_scenario_text(read_text_file(path), path.parent_path());
}

json to_json(const ScenarioFile& scenario) {
  json document;
  document["format"] = scenario.format;
  document["name"] = scenario.name;
  document["domain"] = source_json(scenario.domain);
  document["problem"] = source_json(scenario.problem);
  document["free_run"] = scenario.free_run == FreeRunMode::derived ? "derived" : "explicit";
  if (!scenario.uncontrollable.empty()) document["uncontrollable"] = scenario.uncontrollable;
  document["goals"] = json::array();
  for (const auto& goal : scenario.goals)
    document["goals"].push_back({{"name", goal.name}, {"atoms", atoms_json(goal.atoms)}});
  document["default_des"] = scenario.default_des;
  document["states"] = json::array();
  for (const auto& state : scenario.states) {
    json item{{"id", state.id}, {"atoms", atoms_json(state.atoms)}, {"des", state.des}};
    if (!state.note.empty()) item["note"] = state.note;
    document["states"].push_back(std::move(item));
  }
  document["edges"] = json::array();
  for (const auto& edge : scenario.edges)
    document["edges"].push_back({{"from", edge.from}, {"label", edge.label}, {"to", edge.to}});
  document["substitutions"] = json::array();
  for (const auto& s : scenario.substitutions)
    document["substitutions"].push_back(
        {{"human_action", s.human_action}, {"robot_action", s.robot_action}, {"message", s.message}});
  document["engine"] = {{"K", scenario.engine.K},
                        {"decrease_factor", scenario.engine.decrease_factor},
                        {"increase_factor", scenario.engine.increase_factor},
                        {"choose_order", scenario.engine.choose_order},
                        {"seed", scenario.engine.seed}};
  document["trajectory"] = scenario.trajectory;
  document["notes"] = scenario.notes;
  return document;
}

std::string render(const ScenarioFile& scenario) { return to_json(scenario).dump(2) + "\n"; }

}  // namespace proactive::pddl
