#include "proactive/model/dynamic_system.hpp"

#include <algorithm>
#include <deque>

#include <fmt/format.h>

#include "proactive/error.hpp"

namespace proactive {

InputLabel InputLabel::parse(std::string_view text) {
  if (text == "null") return null();
  auto split = text.find(':');
  if (split == std::string_view::npos || split + 1 == text.size())
    throw Error(fmt::format("malformed input label '{}'", text));
  auto prefix = text.substr(0, split);
  std::string name(text.substr(split + 1));
  if (prefix == "human") return human(std::move(name));
  if (prefix == "robot") return robot(std::move(name));
  if (prefix == "env") return environment(std::move(name));
  throw Error(fmt::format("unknown input label kind '{}'", prefix));
}

std::string to_string(const InputLabel& label) {
  switch (label.kind()) {
    case InputLabel::Kind::null_input:
      return "null";
    case InputLabel::Kind::human_action:
      return "human:" + label.name();
    case InputLabel::Kind::robot_action:
      return "robot:" + label.name();
    case InputLabel::Kind::environment:
      return "env:" + label.name();
  }
  return "null";
}

DynamicSystem::DynamicSystem(std::vector<WorldState> states, std::vector<Transition> transitions)
    : states_(std::move(states)), transitions_(std::move(transitions)) {
  for (StateIndex i = 0; i < states_.size(); ++i) {
    if (!by_id_.emplace(states_[i].id, i).second)
      throw ScenarioError(ScenarioError::Kind::duplicate_state, fmt::format("duplicate state id '{}'", states_[i].id));
    auto [it, inserted] = by_atoms_.emplace(states_[i].atoms, i);
    if (!inserted)
      throw ScenarioError(ScenarioError::Kind::duplicate_state,
                          fmt::format("states '{}' and '{}' have the same atoms", states_[it->second].id,
                                      states_[i].id));
  }

  free_.assign(states_.size(), {});
  sink_.assign(states_.size(), false);
  for (const auto& t : transitions_) {
    if (t.from >= states_.size() || t.to >= states_.size())
      throw UnknownState(fmt::format("transition {} -> {} leaves the state set", t.from, t.to));
    if (t.label.is_null()) free_[t.from].push_back(t.to);
  }
  for (StateIndex i = 0; i < states_.size(); ++i) {
    auto& successors = free_[i];
    std::sort(successors.begin(), successors.end());
    successors.erase(std::unique(successors.begin(), successors.end()), successors.end());
    if (successors.empty()) {
      successors.push_back(i);
      sink_[i] = true;
    }
  }
}

std::optional<StateIndex> DynamicSystem::find(const AtomSet& atoms) const {
  auto it = by_atoms_.find(atoms);
  if (it == by_atoms_.end()) return std::nullopt;
  return it->second;
}

std::optional<StateIndex> DynamicSystem::find_id(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

StateIndex DynamicSystem::index_of(std::string_view id) const {
  if (auto index = find_id(id)) return *index;
  throw UnknownState(fmt::format("unknown state '{}'", id));
}

std::vector<WorldState> DynamicSystem::free_successors(const WorldState& state) const {
  auto index = find(state.atoms);
  if (!index) throw UnknownState(fmt::format("state '{}' is not part of the model", state.id));
  std::vector<WorldState> out;
  for (auto next : free_[*index]) out.push_back(states_[next]);
  return out;
}

DynamicSystem DynamicSystem::with_sink(WorldState state) const {
  auto states = states_;
  states.push_back(std::move(state));
  return DynamicSystem(std::move(states), transitions_);
}

DynamicSystem derive_free_run(const WorldState& initial, const std::vector<GroundAction>& uncontrollable,
                              std::size_t max_states, std::string_view prefix) {
  std::vector<WorldState> states{WorldState{fmt::format("{}0", prefix), initial.atoms}};
  std::map<AtomSet, StateIndex> seen{{initial.atoms, 0}};
  std::vector<Transition> transitions;
  std::deque<StateIndex> frontier{0};

  while (!frontier.empty()) {
    auto current = frontier.front();
    frontier.pop_front();
    for (const auto& action : uncontrollable) {
      if (!applicable(states[current].atoms, action)) continue;
      for (auto& next : proactive::apply(states[current].atoms, action)) {
        auto [it, inserted] = seen.emplace(next, states.size());
        if (inserted) {
          if (states.size() >= max_states)
            throw Error(fmt::format("free run exceeds {} states", max_states));
          states.push_back(WorldState{fmt::format("{}{}", prefix, states.size()), std::move(next)});
          frontier.push_back(it->second);
        }
        transitions.push_back(Transition{current, InputLabel::null(), it->second});
      }
    }
  }
  return DynamicSystem(std::move(states), std::move(transitions));
}

}  // namespace proactive
